#include "bwangle/rho.hpp"

#include <cmath>

namespace bwangle {

namespace {
constexpr double kClamp = 1e-12;
}

double sigma_power(double sigma_quarter, double rho) {
    if (!(sigma_quarter > 0.0))
        throw NumericalError("Sigma must be positive for nonzero vectors in a positive "
                             "definite space");
    if (rho == 0.0) return 1.0;
    return std::exp(rho * std::log(sigma_quarter));
}

AngleOutcome angle_from_cosine(double cosine) {
    AngleOutcome out;
    out.cosine = cosine;
    double c = cosine;
    if (c > 1.0 && c <= 1.0 + kClamp) c = 1.0;
    if (c < -1.0 && c >= -1.0 - kClamp) c = -1.0;
    if (std::abs(c) <= 1.0) {
        out.defined = true;
        out.angle_rad = std::acos(c);
    }
    return out;
}

PairGeometry pair_geometry(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                           Eigen::Ref<const Vector> y) {
    const double wx = eval_weight(space, x);
    const double wy = eval_weight(space, y);
    if (wx == 0.0 || wy == 0.0)
        throw ZeroWeightError("pair geometry needs two vectors of nonzero weight");
    const Vector u = x / wx;
    const Vector v = y / wy;
    PairGeometry g;
    g.s = eval_weight(space, u + v);
    g.d = eval_weight(space, u - v);
    g.Sigma = g.s * g.s + g.d * g.d;
    g.Delta = g.s * g.s - g.d * g.d;
    return g;
}

double rho_product(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                   Eigen::Ref<const Vector> y, double rho) {
    const double wx = eval_weight(space, x);
    const double wy = eval_weight(space, y);
    if (wx == 0.0 || wy == 0.0) return 0.0;
    const Vector u = x / wx;
    const Vector v = y / wy;
    const double s = eval_weight(space, u + v);
    const double d = eval_weight(space, u - v);
    const double delta4 = (s * s - d * d) / 4.0;
    const double sigma4 = (s * s + d * d) / 4.0;
    return wx * wy * delta4 * sigma_power(sigma4, rho);
}

AngleOutcome rho_angle(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                       Eigen::Ref<const Vector> y, double rho) {
    const PairGeometry g = pair_geometry(space, x, y);
    return angle_from_cosine(g.Delta / 4.0 * sigma_power(g.Sigma / 4.0, rho));
}

AngleOutcome special_angle(const SpaceDescriptor& space, Eigen::Ref<const Vector> x,
                           Eigen::Ref<const Vector> y, int which) {
    const PairGeometry g = pair_geometry(space, x, y);
    switch (which) {
        case 1:
            return angle_from_cosine((g.s * g.s * g.s * g.s - g.d * g.d * g.d * g.d) / 16.0);
        case 0: return angle_from_cosine(g.Delta / 4.0);
        case -1: return angle_from_cosine(g.Delta / g.Sigma);
        default: throw DescriptorError("special_angle expects which in {1, 0, -1}");
    }
}

double euclid_angle(Eigen::Ref<const Vector> x, Eigen::Ref<const Vector> y) {
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0.0 || ny == 0.0) throw ZeroWeightError("Euclidean angle needs nonzero vectors");
    double c = x.dot(y) / (nx * ny);
    c = std::min(1.0, std::max(-1.0, c));
    return std::acos(c);
}

}  // namespace bwangle
