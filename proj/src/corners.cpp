#include "bwangle/corners.hpp"

#include <algorithm>
#include <cmath>

#include "bwangle/rho.hpp"

namespace bwangle {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCollinearTol = 1e-9;  // relative to the two segment lengths

double cross2(const Vector2& a, const Vector2& b) { return a.x() * b.y() - a.y() * b.x(); }

double eval2(const SpaceDescriptor& space, const Vector2& v) {
    Vector x(2);
    x << v.x(), v.y();
    return eval_weight(space, x);
}

bool collinear(const Vector2& a, const Vector2& b, const Vector2& c) {
    const Vector2 u = b - a, v = c - b;
    return std::abs(cross2(u, v)) <= kCollinearTol * u.norm() * v.norm();
}

// Maximal straight run of polyline points, as circular indices [start, end].
struct Run {
    int start = 0, end = 0, count = 0;
};

struct SphereShape {
    std::vector<Vector2> pts;
    std::vector<Run> runs;  // straight runs with >= 3 points, theta order
};

SphereShape analyze_polyline(std::vector<Vector2> pts) {
    SphereShape shape;
    shape.pts = std::move(pts);
    const int n = static_cast<int>(shape.pts.size());
    if (n < 4) return shape;
    const auto at = [&](int i) -> const Vector2& { return shape.pts[((i % n) + n) % n]; };

    std::vector<int> breaks;
    for (int k = 0; k < n; ++k)
        if (!collinear(at(k - 1), at(k), at(k + 1))) breaks.push_back(k);
    if (breaks.size() < 2) return shape;  // fully collinear: degenerate input

    const int nb = static_cast<int>(breaks.size());
    for (int i = 0; i < nb; ++i) {
        const int s = breaks[i];
        const int e = breaks[(i + 1) % nb];
        const int count = ((e - s) % n + n) % n + 1;
        if (count >= 3) shape.runs.push_back({s, e, count});
    }
    return shape;
}

std::vector<Vector2> polygon_polyline(const SpaceDescriptor& space) {
    std::vector<Vector2> verts = space.vertices;
    std::sort(verts.begin(), verts.end(), [](const Vector2& a, const Vector2& b) {
        return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
    });
    std::vector<Vector2> clean;
    for (const Vector2& v : verts) {
        if (!clean.empty() && (v - clean.back()).norm() < 1e-12) continue;
        clean.push_back(v);
    }
    if (clean.size() > 1 && (clean.front() - clean.back()).norm() < 1e-12) clean.pop_back();
    std::vector<Vector2> out;
    const int sub = 8;
    const std::size_t n = clean.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vector2& a = clean[i];
        const Vector2& b = clean[(i + 1) % n];
        out.push_back(a);
        for (int k = 1; k < sub; ++k)
            out.push_back(a + (static_cast<double>(k) / sub) * (b - a));
    }
    return out;
}

std::vector<Vector2> sampled_polyline(const SpaceDescriptor& space, int resolution) {
    std::vector<Vector2> out;
    out.reserve(static_cast<std::size_t>(resolution));
    for (int k = 0; k < resolution; ++k) {
        const double theta = 2.0 * kPi * k / resolution;
        const Vector2 dir(std::cos(theta), std::sin(theta));
        const double w = eval2(space, dir);
        if (w <= 1e-9) continue;
        out.push_back(dir / w);
    }
    return out;
}

std::vector<CornerWitness> corners_from_shape(const SpaceDescriptor& space,
                                              const SphereShape& shape) {
    std::vector<CornerWitness> out;
    const int n = static_cast<int>(shape.pts.size());
    const int m = static_cast<int>(shape.runs.size());
    if (m < 2) return out;
    const auto at = [&](int i) -> const Vector2& { return shape.pts[((i % n) + n) % n]; };

    for (int j = 0; j < m; ++j) {
        const Run& r1 = shape.runs[j];
        const Run& r2 = shape.runs[(j + 1) % m];
        const int gap = ((r2.start - r1.end) % n + n) % n;
        if (gap > 1) continue;  // a curved arc separates the runs

        const Vector2 a1 = at(r1.start), b1 = at(r1.end);
        const Vector2 a2 = at(r2.start), b2 = at(r2.end);
        const Vector2 d1 = b1 - a1, d2 = b2 - a2;
        const double denom = cross2(d1, d2);
        if (std::abs(denom) <= 1e-12 * d1.norm() * d2.norm()) continue;  // parallel lines
        const double s = cross2(a2 - a1, d2) / denom;
        Vector2 y_hat = a1 + s * d1;
        const double wy = eval2(space, y_hat);
        if (std::abs(wy - 1.0) > 1e-6) continue;  // intersection drifted off the sphere
        y_hat /= wy;

        Vector2 x_bar(y_hat.y(), -y_hat.x());
        x_bar.normalize();

        // One-sided slopes in the (x_bar, y_hat) frame, measured at the
        // far end of each run.
        double slope_plus = 0.0, slope_minus = 0.0;
        double extent_plus = 0.0, extent_minus = 0.0;
        bool have_plus = false, have_minus = false;
        for (const Vector2& far : {at(r1.start), at(r2.end)}) {
            const Vector2 d = far - y_hat;
            const double a = d.dot(x_bar);
            const double b = d.dot(y_hat) / y_hat.squaredNorm();
            if (std::abs(a) < 1e-9) continue;
            if (a > 0.0) {
                slope_plus = b / a;
                extent_plus = a;
                have_plus = true;
            } else {
                slope_minus = b / a;
                extent_minus = -a;
                have_minus = true;
            }
        }
        if (!have_plus || !have_minus) continue;
        if (slope_plus == slope_minus) continue;

        CornerWitness w;
        w.y_hat = y_hat;
        w.x_bar = x_bar;
        if (slope_plus < slope_minus) {
            w.kind = CornerKind::Convex;
            w.m_minus = slope_plus;
            w.m_plus = slope_minus;
        } else {
            w.kind = CornerKind::Concave;
            w.m_plus = slope_plus;
            w.m_minus = slope_minus;
        }
        w.delta_max = std::min(1.0, std::min(extent_plus, extent_minus));
        bool ok = false;
        for (int shrink = 0; shrink < 20; ++shrink) {
            if (verify_corner(space, w)) {
                ok = true;
                break;
            }
            w.delta_max *= 0.5;
            if (w.delta_max < 1e-3) break;
        }
        if (ok) out.push_back(w);
    }
    return out;
}

}  // namespace

std::vector<Vector2> sphere_polyline(const SpaceDescriptor& space, int resolution) {
    if (space.dimension != 2) throw DimensionError("sphere polyline needs a 2-D space");
    if (space.family == Family::Hexagon || space.family == Family::Polygon)
        return polygon_polyline(space);
    return sampled_polyline(space, resolution);
}

std::vector<CornerWitness> find_corners(const SpaceDescriptor& space, int resolution) {
    if (space.dimension != 2) throw DimensionError("corner detection needs a 2-D space");
    if (!space.positive_definite)
        throw NotPositiveDefiniteError("corner detection requires a positive definite space");
    return corners_from_shape(space, analyze_polyline(sphere_polyline(space, resolution)));
}

std::pair<Vector, Vector> corner_vectors(const CornerWitness& w, double delta) {
    const double lead = w.kind == CornerKind::Convex ? w.m_minus : w.m_plus;
    const double trail = w.kind == CornerKind::Convex ? w.m_plus : w.m_minus;
    Vector v(2), u(2);
    v = delta * w.x_bar + (1.0 + delta * lead) * w.y_hat;
    u = -delta * w.x_bar + (1.0 - delta * trail) * w.y_hat;
    return {v, u};
}

bool verify_corner(const SpaceDescriptor& space, const CornerWitness& w, int delta_samples,
                   double tol) {
    if (!(w.delta_max > 0.0)) return false;
    for (int i = 0; i <= delta_samples; ++i) {
        const double delta = w.delta_max * i / delta_samples;
        const auto [v, u] = corner_vectors(w, delta);
        if (std::abs(eval_weight(space, v) - 1.0) > tol) return false;
        if (std::abs(eval_weight(space, u) - 1.0) > tol) return false;
    }
    return true;
}

CornerProductPair corner_pair_product(const SpaceDescriptor& space, const CornerWitness& w,
                                      double delta, double rho) {
    const auto [v, u] = corner_vectors(w, delta);
    CornerProductPair out;
    out.numeric = rho_product(space, v, u, rho);
    const double slope_gap =
        w.kind == CornerKind::Convex ? w.m_minus - w.m_plus : w.m_plus - w.m_minus;
    Vector axis(2);
    axis = 2.0 * w.x_bar + (w.m_minus + w.m_plus) * w.y_hat;
    const double q = eval_weight(space, axis);
    const double top = 1.0 + delta * slope_gap + delta * delta * (slope_gap * slope_gap - q * q) / 4.0;
    const double bottom =
        1.0 + delta * slope_gap + delta * delta * (slope_gap * slope_gap + q * q) / 4.0;
    out.analytic = top * sigma_power(bottom, rho);
    return out;
}

CurvatureReport curvature_report(const SpaceDescriptor& space, int resolution) {
    if (space.dimension != 2) throw DimensionError("curvature report needs a 2-D space");
    CurvatureReport rep;
    rep.resolution = resolution;
    const SphereShape shape = analyze_polyline(sphere_polyline(space, resolution));
    const int n = static_cast<int>(shape.pts.size());
    const auto at = [&](int i) -> const Vector2& { return shape.pts[((i % n) + n) % n]; };
    for (const Run& r : shape.runs) rep.flat_segments.push_back({at(r.start), at(r.end)});
    if (space.positive_definite) rep.corners = corners_from_shape(space, shape);
    rep.strictly_curved = rep.flat_segments.empty();
    rep.strictly_convex =
        rep.strictly_curved && structure_report(space).triangle_inequality_holds;
    return rep;
}

double flat_segment_value(double t, double rho) {
    if (!(t >= 0.0 && t < 1.0)) throw DescriptorError("flat segment parameter needs 0 <= t < 1");
    return (1.0 - t * t) * sigma_power(1.0 + t * t, rho);
}

double flat_segment_threshold(double t) {
    if (!(t >= 0.0 && t < 1.0)) throw DescriptorError("flat segment parameter needs 0 <= t < 1");
    if (t == 0.0) return 1.0;  // limit value
    return -std::log(1.0 - t * t) / std::log(1.0 + t * t);
}

SegmentPair segment_pair(const SpaceDescriptor& space, const FlatSegment& seg, double rho) {
    Vector mid(2), along(2);
    mid = 0.5 * (seg.a + seg.b);
    along = seg.b - seg.a;
    const double wm = eval_weight(space, mid);
    const double wa = eval_weight(space, along);
    if (wm == 0.0 || wa == 0.0) throw ZeroWeightError("degenerate flat segment");
    const Vector z = mid / wm;
    const Vector w = along / wa;
    // z +- t*w stays on the segment for t <= wa/2; the value
    // (1-t^2)(1+t^2)^rho peaks at t^2 = (rho-1)/(rho+1) when rho > 1.
    const double t_max = 0.999 * std::min(1.0, wa / 2.0);
    double t = rho > 1.0 ? std::sqrt((rho - 1.0) / (rho + 1.0)) : 0.5 * t_max;
    t = std::min(t, t_max);
    SegmentPair out;
    out.t = t;
    out.x = z + t * w;
    out.y = z - t * w;
    return out;
}

double e_map(const SpaceDescriptor& space, Eigen::Ref<const Vector> v,
             Eigen::Ref<const Vector> w, double t) {
    const Vector mixed = w + t * v;
    const double wm = eval_weight(space, mixed);
    if (wm == 0.0) throw ZeroWeightError("w + t*v has zero weight");
    const Vector u = mixed / wm;
    const double sp = eval_weight(space, v + u);
    const double sm = eval_weight(space, v - u);
    return (sp * sp - sm * sm) / 4.0;
}

}  // namespace bwangle
