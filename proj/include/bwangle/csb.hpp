#pragma once

#include <cstdint>

#include "bwangle/space.hpp"

namespace bwangle {

struct CsbConfig {
    int resolution = 1024;     // theta grid per factor (2-D) / random pair count scale (n > 2)
    int refine = 40;           // coordinate-descent steps per start
    int starts = 16;           // refinement starts taken from the best grid cells
    double tol = 1e-7;         // slack on the CSB predicate sup <= 1 + tol
    std::uint64_t seed = 0x5eed;
    long random_pairs = 1000000;  // n > 2 heuristic mode
};

struct CsbReport {
    double rho = 0.0;
    double sup_estimate = 0.0;  // lower bound on sup |Delta/4| (Sigma/4)^rho over unit pairs
    Vector witness_x, witness_y;
    bool holds = false;  // sup_estimate <= 1 + tolerance
    int grid_resolution = 0;
    int refinement_steps = 0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
};

/// Estimates g(rho) = sup over unit pairs of |Delta/4|*(Sigma/4)^rho by a
/// deterministic theta-grid search plus coordinate-descent refinement.
/// The estimate never overshoots the value at its own witness: "holds"
/// means no violation was found at this resolution.
CsbReport csb_sup(const SpaceDescriptor& space, double rho, const CsbConfig& config = {});

CsbReport csb_sup(const SpaceDescriptor& space, double rho, int resolution, int refine);

/// |Delta/4|*(Sigma/4)^rho for two unit vectors.
double csb_value(const SpaceDescriptor& space, Eigen::Ref<const Vector> u,
                 Eigen::Ref<const Vector> v, double rho);

bool has_angle(const SpaceDescriptor& space, double rho, double tol = 1e-7,
               const CsbConfig& config = {});

}  // namespace bwangle
