#pragma once

#include "bwangle/space.hpp"

namespace bwangle {

enum class CornerKind { Convex, Concave };

/// A sphere point where two straight sphere segments meet, in the frame
/// (x_bar, y_hat): the two one-sided slopes m_minus < m_plus and the
/// verified validity range delta_max of the defining identities.
struct CornerWitness {
    Vector2 y_hat = Vector2::Zero();  // the corner, weight 1
    Vector2 x_bar = Vector2::Zero();  // transverse direction (Euclidean unit)
    double m_minus = 0.0;
    double m_plus = 0.0;
    CornerKind kind = CornerKind::Convex;
    double delta_max = 1.0;
};

struct FlatSegment {
    Vector2 a = Vector2::Zero();  // arc endpoints on the unit sphere
    Vector2 b = Vector2::Zero();
};

struct CurvatureReport {
    bool strictly_convex = false;
    bool strictly_curved = false;
    std::vector<FlatSegment> flat_segments;
    std::vector<CornerWitness> corners;
    int resolution = 0;
};

/// Ordered unit-sphere polyline (theta increasing).  Polygonal families
/// use their exact vertices with subdivided edges; everything else is
/// sampled on a uniform theta grid.
std::vector<Vector2> sphere_polyline(const SpaceDescriptor& space, int resolution = 4096);

/// Detects corners by fitting maximal straight runs on the sphere
/// polyline and intersecting the support lines of adjacent runs.
std::vector<CornerWitness> find_corners(const SpaceDescriptor& space, int resolution = 4096);

/// Checks both defining weight identities on a delta grid in
/// [0, w.delta_max]; true iff the worst deviation from 1 is <= tol.
bool verify_corner(const SpaceDescriptor& space, const CornerWitness& w, int delta_samples = 10,
                   double tol = 1e-9);

struct CornerProductPair {
    double numeric = 0.0;   // rho-product of the two delta-unit-vectors
    double analytic = 0.0;  // closed form T * B^rho from the corner frame
};

CornerProductPair corner_pair_product(const SpaceDescriptor& space, const CornerWitness& w,
                                      double delta, double rho);

/// The two delta-unit-vectors of the corner identities (first the +x_bar
/// side).
std::pair<Vector, Vector> corner_vectors(const CornerWitness& w, double delta);

CurvatureReport curvature_report(const SpaceDescriptor& space, int resolution = 4096);

/// (1 - t^2) * (1 + t^2)^rho, the pair value produced by a flat sphere
/// segment; exceeds 1 exactly when rho > flat_segment_threshold(t).
double flat_segment_value(double t, double rho);

/// -log(1 - t^2) / log(1 + t^2); tends to 1 as t -> 0.
double flat_segment_threshold(double t);

struct SegmentPair {
    Vector x, y;
    double t = 0.0;
};

/// Builds the pair x = z + t*w, y = z - t*w from a flat segment (z its
/// unit midpoint, w a weight-1 vector along it), choosing t to maximize
/// flat_segment_value(t, rho) within the segment.
SegmentPair segment_pair(const SpaceDescriptor& space, const FlatSegment& seg, double rho);

/// E(t) = (||v+u||^2 - ||v-u||^2)/4 with u = (w + t*v)/||w + t*v|| for
/// unit vectors v, w; E(0) is Delta(v, w)/4.
double e_map(const SpaceDescriptor& space, Eigen::Ref<const Vector> v,
             Eigen::Ref<const Vector> w, double t);

}  // namespace bwangle
