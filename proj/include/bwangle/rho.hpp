#pragma once

#include "bwangle/space.hpp"

namespace bwangle {

/// s, d, Sigma, Delta for a pair of nonzero vectors: the weights of the
/// sum and difference of the normalized vectors, their squared sum and
/// squared difference.
struct PairGeometry {
    double s = 0.0;      // || x/||x|| + y/||y|| ||
    double d = 0.0;      // || x/||x|| - y/||y|| ||
    double Sigma = 0.0;  // s^2 + d^2
    double Delta = 0.0;  // s^2 - d^2
};

struct AngleOutcome {
    double cosine = 0.0;  // (Delta/4) * (Sigma/4)^rho, before clamping
    bool defined = false;
    double angle_rad = 0.0;  // in [0, pi] when defined
};

PairGeometry pair_geometry(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                           Eigen::Ref<const Vector> y);

/// The rho-product  ||x||*||y|| * (Delta/4) * (Sigma/4)^rho;  zero when
/// either argument has zero weight.
double rho_product(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                   Eigen::Ref<const Vector> y, double rho);

AngleOutcome rho_angle(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                       Eigen::Ref<const Vector> y, double rho);

/// Closed forms for rho in {1, 0, -1}:
///   rho =  1:  arccos((s^4 - d^4)/16)
///   rho =  0:  arccos(Delta/4)
///   rho = -1:  arccos(Delta/Sigma)   (always defined)
AngleOutcome special_angle(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                           Eigen::Ref<const Vector> y, int which);

double euclid_angle(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> y);

/// (Sigma/4)^rho as exp(rho*ln(Sigma/4)); hard error when Sigma <= 0.
double sigma_power(double sigma_quarter, double rho);

/// Cosine -> outcome with the 1e-12 clamp at +-1.
AngleOutcome angle_from_cosine(double cosine);

}  // namespace bwangle
