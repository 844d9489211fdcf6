#pragma once

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bwangle/errors.hpp"

namespace bwangle {

using Vector = Eigen::VectorXd;
using Vector2 = Eigen::Vector2d;

/// Families of balanced weights bundled with the library.
enum class Family {
    Hoelder,        // (sum |x_i|^p)^(1/p), extended to p <= 0 and +-inf
    Hexagon,        // polygon sphere through (0,1),(1,r),(1,-r),(0,-1),(-1,-r),(-1,r)
    Polygon,        // arbitrary centrally symmetric polygon sphere
    RadialTable,    // piecewise-linear radius R(theta) plus exact direction overrides
    Product,        // (|a|_A^p + |b|_B^p)^(1/p) on A x B
    PathologicalA,  // sphere |x*y| = 1; weight sqrt(|x*y|); not positive definite
    PathologicalB,  // Euclidean circle with (+-1,0) replaced by (+-2,0)
    PathologicalC,  // Euclidean circle with (+-1,0) replaced by (+-1/2,0)
};

struct RadialSample {
    double theta = 0.0;   // direction angle, radians in (-pi, pi]
    double radius = 1.0;  // sphere radius in that direction, > 0
};

/// A finite-dimensional vector space plus a balanced weight, given by a
/// family tag and parameters.  Immutable after construction; the derived
/// flags are computed by the factory functions, never lazily.
struct SpaceDescriptor {
    int dimension = 2;
    Family family = Family::Hoelder;

    double p = 2.0;  // Hoelder exponent or Product combiner (+-inf allowed, 0 allowed)
    double r = 0.0;  // Hexagon parameter, >= 0

    std::vector<Vector2> vertices;        // Polygon / Hexagon sphere (closed implicitly)
    std::vector<RadialSample> samples;    // RadialTable interpolation nodes
    std::vector<RadialSample> overrides;  // exact-direction radius overrides

    std::shared_ptr<const SpaceDescriptor> left, right;  // Product factors

    bool positive_definite = false;
    bool continuous_weight = true;

    static SpaceDescriptor hoelder(double p, int dimension = 2);
    static SpaceDescriptor hexagon(double r);
    static SpaceDescriptor polygon(std::vector<Vector2> vertices);
    static SpaceDescriptor radial_table(std::vector<RadialSample> samples,
                                        std::vector<RadialSample> overrides = {});
    static SpaceDescriptor product(SpaceDescriptor left, SpaceDescriptor right, double p);
    static SpaceDescriptor pathological_a();
    static SpaceDescriptor pathological_b();
    static SpaceDescriptor pathological_c();

    std::string label() const;
};

/// Evaluates the weight ||x|| of the space at x.  Always finite and >= 0.
double eval_weight(const SpaceDescriptor& space, Eigen::Ref<const Vector> x);

/// x / ||x||.  Throws ZeroWeightError when ||x|| = 0.
Vector normalize(const SpaceDescriptor& space, Eigen::Ref<const Vector> x);

struct SphereSample {
    std::vector<Vector> points;         // unit vectors, weight 1 within 1e-12
    std::vector<double> skipped_theta;  // 2-D directions with (near-)zero weight
};

/// Unit vectors of the space.  dimension == 2: theta-uniform grid with
/// zero-weight directions skipped and flagged; dimension > 2: seeded
/// random directions.  Throws NotPositiveDefiniteError when more than 1%
/// of the sampled directions carry zero weight.
SphereSample sample_unit_sphere(const SpaceDescriptor& space, int resolution,
                                std::uint64_t seed = 0x5eed);

struct WitnessPair {
    Vector x, y;
    double discrepancy = 0.0;
};

struct StructureReport {
    bool is_positive_definite = true;
    bool triangle_inequality_holds = true;
    bool parallelogram_identity_holds = true;
    std::optional<WitnessPair> triangle_witness;
    std::optional<WitnessPair> parallelogram_witness;
    int sample_count = 0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;

    bool ip_space_candidate() const {
        return is_positive_definite && triangle_inequality_holds && parallelogram_identity_holds;
    }
};

/// Samples the structural conditions (positive definiteness, triangle
/// inequality, parallelogram identity) on deterministic sphere-grid pairs
/// followed by seeded random pairs.
StructureReport structure_report(const SpaceDescriptor& space, int samples = 2000,
                                 double tol = 1e-9, std::uint64_t seed = 0x5eed);

SpaceDescriptor product_space(SpaceDescriptor left, SpaceDescriptor right, double p);

/// Serializes an extended real the way descriptors spell it ("inf"/"-inf"
/// for the infinities, plain digits otherwise).
std::string extended_real_to_string(double v);

}  // namespace bwangle
