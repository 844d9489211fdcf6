#include "bwangle/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace bwangle {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroDirectionTol = 1e-9;  // weight below this in a unit direction counts as zero

double cross2(const Vector2& a, const Vector2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Scale t > 0 such that t*x lies on the polygon boundary; returns 0 when the
// ray misses every edge (x == 0 or a gap in a degenerate polygon).  For
// star-shaped spheres the crossing is unique; the outermost one wins.
double polygon_ray_scale(const std::vector<Vector2>& poly, const Vector2& x) {
    double best_t = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vector2& a = poly[i];
        const Vector2& b = poly[(i + 1) % n];
        const Vector2 e = b - a;
        if (e.squaredNorm() < 1e-30) continue;  // degenerate edge (e.g. hexagon r = 0)
        const double denom = cross2(x, e);
        if (std::abs(denom) < 1e-300) continue;  // ray parallel to edge
        const double t = cross2(a, e) / denom;
        const double s = cross2(a, x) / denom;
        // Endpoint slop just above rounding noise: a generous margin lets
        // rays near a vertex hit the *extension* of the farther edge and
        // report a point measurably outside the sphere.
        if (t > 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best_t = std::max(best_t, t);
    }
    return best_t;
}

double polygon_weight(const std::vector<Vector2>& poly, const Vector2& x) {
    if (x.squaredNorm() == 0.0) return 0.0;
    const double t = polygon_ray_scale(poly, x);
    if (t <= 0.0) throw NumericalError("polygon sphere: no boundary crossing in direction");
    return 1.0 / t;
}

double wrap_angle(double theta) {
    // into (-pi, pi]
    while (theta > kPi) theta -= 2.0 * kPi;
    while (theta <= -kPi) theta += 2.0 * kPi;
    return theta;
}

double radial_table_radius(const SpaceDescriptor& s, double theta) {
    for (const RadialSample& o : s.overrides)
        if (std::abs(wrap_angle(theta - o.theta)) <= 1e-12) return o.radius;
    const auto& t = s.samples;  // sorted by theta in (-pi, pi]
    if (t.empty()) throw DescriptorError("radial table without samples");
    if (t.size() == 1) return t.front().radius;
    auto it = std::lower_bound(t.begin(), t.end(), theta,
                               [](const RadialSample& a, double th) { return a.theta < th; });
    const RadialSample& hi = (it == t.end()) ? t.front() : *it;
    const RadialSample& lo = (it == t.begin()) ? t.back() : *(it - 1);
    double span = hi.theta - lo.theta;
    double off = theta - lo.theta;
    if (span <= 0.0) span += 2.0 * kPi;
    if (off < 0.0) off += 2.0 * kPi;
    if (span <= 0.0) return lo.radius;
    const double u = off / span;
    return lo.radius + u * (hi.radius - lo.radius);
}

double hoelder_weight(double p, Eigen::Ref<const Vector> x) {
    const Eigen::Index n = x.size();
    if (p == 0.0) return 0.0;
    if (std::isinf(p)) {
        double m = p > 0 ? 0.0 : std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < n; ++i)
            m = p > 0 ? std::max(m, std::abs(x[i])) : std::min(m, std::abs(x[i]));
        return m;
    }
    if (p == 2.0) return x.norm();
    if (p == 1.0) return x.cwiseAbs().sum();
    if (p < 0.0) {
        for (Eigen::Index i = 0; i < n; ++i)
            if (x[i] == 0.0) return 0.0;
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) acc += std::pow(std::abs(x[i]), p);
    if (acc == 0.0) return 0.0;
    return std::pow(acc, 1.0 / p);
}

double combine_product(double wa, double wb, double p) {
    if (p == 0.0) return 0.0;
    if (std::isinf(p)) return p > 0 ? std::max(wa, wb) : std::min(wa, wb);
    if (p < 0.0 && (wa == 0.0 || wb == 0.0)) return 0.0;
    if (p == 2.0) return std::hypot(wa, wb);
    if (p == 1.0) return wa + wb;
    const double acc = std::pow(wa, p) + std::pow(wb, p);
    if (acc == 0.0) return 0.0;
    return std::pow(acc, 1.0 / p);
}

std::vector<Vector2> hexagon_vertices(double r) {
    return {Vector2(0, 1), Vector2(1, r), Vector2(1, -r),
            Vector2(0, -1), Vector2(-1, -r), Vector2(-1, r)};
}

}  // namespace

SpaceDescriptor SpaceDescriptor::hoelder(double p, int dimension) {
    if (dimension < 1) throw DescriptorError("dimension must be >= 1");
    SpaceDescriptor s;
    s.dimension = dimension;
    s.family = Family::Hoelder;
    s.p = p;
    s.positive_definite = p > 0.0;  // +inf counts; min/0/negative exponents do not
    if (std::isinf(p) && p < 0) s.positive_definite = false;
    return s;
}

SpaceDescriptor SpaceDescriptor::hexagon(double r) {
    if (!(r >= 0.0)) throw DescriptorError("hexagon parameter must be >= 0");
    SpaceDescriptor s;
    s.family = Family::Hexagon;
    s.r = r;
    s.vertices = hexagon_vertices(r);
    s.positive_definite = true;
    return s;
}

SpaceDescriptor SpaceDescriptor::polygon(std::vector<Vector2> vertices) {
    if (!vertices.empty() && (vertices.front() - vertices.back()).norm() < 1e-12)
        vertices.pop_back();  // accept explicitly closed lists
    if (vertices.size() < 4) throw DescriptorError("polygon sphere needs at least 4 vertices");
    for (const Vector2& v : vertices) {
        bool negated = false;
        for (const Vector2& w : vertices)
            if ((v + w).norm() <= 1e-9 * std::max(1.0, v.norm())) negated = true;
        if (!negated) throw DescriptorError("polygon sphere must be centrally symmetric");
    }
    SpaceDescriptor s;
    s.family = Family::Polygon;
    s.vertices = std::move(vertices);
    s.positive_definite = true;
    for (const Vector2& v : s.vertices)
        if (v.norm() < 1e-12) s.positive_definite = false;
    return s;
}

namespace {

// A balanced weight needs R(theta + pi) = R(theta); complete the table by
// mirroring and reject contradictory antipodal radii.
void mirror_radial(std::vector<RadialSample>& table) {
    const std::size_t given = table.size();
    for (std::size_t i = 0; i < given; ++i) {
        const double mirrored = wrap_angle(table[i].theta + kPi);
        bool found = false;
        for (std::size_t j = 0; j < given; ++j) {
            if (std::abs(wrap_angle(table[j].theta - mirrored)) > 1e-12) continue;
            found = true;
            if (std::abs(table[j].radius - table[i].radius) > 1e-12)
                throw DescriptorError("radial table has conflicting antipodal radii");
        }
        if (!found) table.push_back({mirrored, table[i].radius});
    }
}

}  // namespace

SpaceDescriptor SpaceDescriptor::radial_table(std::vector<RadialSample> samples,
                                              std::vector<RadialSample> overrides) {
    if (samples.empty()) throw DescriptorError("radial table without samples");
    for (RadialSample& rs : samples) rs.theta = wrap_angle(rs.theta);
    for (RadialSample& rs : overrides) rs.theta = wrap_angle(rs.theta);
    mirror_radial(samples);
    mirror_radial(overrides);
    std::sort(samples.begin(), samples.end(),
              [](const RadialSample& a, const RadialSample& b) { return a.theta < b.theta; });
    SpaceDescriptor s;
    s.family = Family::RadialTable;
    s.samples = std::move(samples);
    s.overrides = std::move(overrides);
    s.positive_definite = true;
    for (const RadialSample& rs : s.samples)
        if (!(rs.radius > 0.0)) s.positive_definite = false;
    for (const RadialSample& rs : s.overrides)
        if (!(rs.radius > 0.0)) s.positive_definite = false;
    s.continuous_weight = s.overrides.empty();
    return s;
}

SpaceDescriptor SpaceDescriptor::product(SpaceDescriptor left, SpaceDescriptor right, double p) {
    SpaceDescriptor s;
    s.family = Family::Product;
    s.p = p;
    s.dimension = left.dimension + right.dimension;
    s.positive_definite =
        p > 0.0 && !(std::isinf(p) && p < 0) && left.positive_definite && right.positive_definite;
    if (p == 0.0) s.positive_definite = false;
    s.continuous_weight = left.continuous_weight && right.continuous_weight;
    s.left = std::make_shared<SpaceDescriptor>(std::move(left));
    s.right = std::make_shared<SpaceDescriptor>(std::move(right));
    return s;
}

SpaceDescriptor SpaceDescriptor::pathological_a() {
    SpaceDescriptor s;
    s.family = Family::PathologicalA;
    s.positive_definite = false;
    return s;
}

SpaceDescriptor SpaceDescriptor::pathological_b() {
    SpaceDescriptor s;
    s.family = Family::PathologicalB;
    s.samples = {{0.0, 1.0}};
    s.overrides = {{0.0, 2.0}, {kPi, 2.0}};
    s.positive_definite = true;
    s.continuous_weight = false;
    return s;
}

SpaceDescriptor SpaceDescriptor::pathological_c() {
    SpaceDescriptor s = pathological_b();
    s.family = Family::PathologicalC;
    s.overrides = {{0.0, 0.5}, {kPi, 0.5}};
    return s;
}

std::string SpaceDescriptor::label() const {
    std::ostringstream os;
    switch (family) {
        case Family::Hoelder:
            os << "hoelder(p=" << extended_real_to_string(p) << ",n=" << dimension << ")";
            break;
        case Family::Hexagon: os << "hexagon(r=" << r << ")"; break;
        case Family::Polygon: os << "polygon(" << vertices.size() << " vertices)"; break;
        case Family::RadialTable: os << "radial_table(" << samples.size() << " samples)"; break;
        case Family::Product:
            os << "product(" << left->label() << "," << right->label()
               << ",p=" << extended_real_to_string(p) << ")";
            break;
        case Family::PathologicalA: os << "pathological_a"; break;
        case Family::PathologicalB: os << "pathological_b"; break;
        case Family::PathologicalC: os << "pathological_c"; break;
    }
    return os.str();
}

double eval_weight(const SpaceDescriptor& space, Eigen::Ref<const Vector> x) {
    if (x.size() != space.dimension)
        throw DimensionError("vector length " + std::to_string(x.size()) +
                             " does not match space dimension " + std::to_string(space.dimension));
    switch (space.family) {
        case Family::Hoelder: return hoelder_weight(space.p, x);
        case Family::Hexagon:
        case Family::Polygon: return polygon_weight(space.vertices, Vector2(x[0], x[1]));
        case Family::RadialTable:
        case Family::PathologicalB:
        case Family::PathologicalC: {
            const double n2 = std::hypot(x[0], x[1]);
            if (n2 == 0.0) return 0.0;
            return n2 / radial_table_radius(space, std::atan2(x[1], x[0]));
        }
        case Family::PathologicalA: return std::sqrt(std::abs(x[0] * x[1]));
        case Family::Product: {
            const double wa = eval_weight(*space.left, x.head(space.left->dimension));
            const double wb = eval_weight(*space.right, x.tail(space.right->dimension));
            return combine_product(wa, wb, space.p);
        }
    }
    throw DescriptorError("unknown family");
}

Vector normalize(const SpaceDescriptor& space, Eigen::Ref<const Vector> x) {
    const double w = eval_weight(space, x);
    if (w == 0.0) throw ZeroWeightError("cannot normalize a vector of zero weight");
    return x / w;
}

SphereSample sample_unit_sphere(const SpaceDescriptor& space, int resolution, std::uint64_t seed) {
    if (resolution < 1) throw DescriptorError("resolution must be >= 1");
    SphereSample out;
    if (space.dimension == 2) {
        out.points.reserve(static_cast<std::size_t>(resolution));
        for (int k = 0; k < resolution; ++k) {
            const double theta = 2.0 * kPi * k / resolution;
            Vector dir(2);
            dir << std::cos(theta), std::sin(theta);
            const double w = eval_weight(space, dir);
            if (w <= kZeroDirectionTol) {
                out.skipped_theta.push_back(theta);
                continue;
            }
            out.points.push_back(dir / w);
        }
        if (out.skipped_theta.size() * 100 > static_cast<std::size_t>(resolution))
            throw NotPositiveDefiniteError("more than 1% of sampled directions have zero weight");
        return out;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < resolution; ++k) {
        Vector dir(space.dimension);
        for (int i = 0; i < space.dimension; ++i) dir[i] = gauss(rng);
        const double w = eval_weight(space, dir / dir.norm());
        if (w <= kZeroDirectionTol) {
            out.skipped_theta.push_back(0.0);
            continue;
        }
        out.points.push_back(dir / dir.norm() / w);
    }
    if (out.skipped_theta.size() * 100 > static_cast<std::size_t>(resolution))
        throw NotPositiveDefiniteError("more than 1% of sampled directions have zero weight");
    return out;
}

StructureReport structure_report(const SpaceDescriptor& space, int samples, double tol,
                                 std::uint64_t seed) {
    if (samples < 100) throw DescriptorError("structure_report needs at least 100 samples");
    StructureReport rep;
    rep.sample_count = samples;
    rep.tolerance = tol;
    rep.seed = seed;

    // Deterministic candidates first so witnesses land on the canonical pairs.
    std::vector<Vector> pts;
    if (space.dimension == 2) {
        const int grid = std::min(samples, 64);
        for (int k = 0; k < grid; ++k) {
            const double theta = 2.0 * kPi * k / grid;
            Vector dir(2);
            dir << std::cos(theta), std::sin(theta);
            const double w = eval_weight(space, dir);
            if (w <= kZeroDirectionTol) {
                rep.is_positive_definite = false;
                continue;
            }
            pts.push_back(dir / w);
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (static_cast<int>(pts.size()) < samples) {
        Vector dir(space.dimension);
        for (int i = 0; i < space.dimension; ++i) dir[i] = gauss(rng);
        if (dir.norm() == 0.0) continue;
        dir /= dir.norm();
        const double w = eval_weight(space, dir);
        if (w <= kZeroDirectionTol) {
            rep.is_positive_definite = false;
            continue;
        }
        pts.push_back(dir / w);
    }

    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    std::uniform_real_distribution<double> scale(0.1, 3.0);
    const int pair_checks = samples;
    for (int k = 0; k < pair_checks; ++k) {
        Vector x, y;
        if (k == 0 && space.dimension == 2) {
            x = Vector(2);
            y = Vector(2);
            x << 1, 0;
            y << 0, 1;  // canonical axis pair
        } else {
            x = pts[pick(rng)] * scale(rng);
            y = pts[pick(rng)] * scale(rng);
        }
        const double wx = eval_weight(space, x), wy = eval_weight(space, y);
        const double ws = eval_weight(space, x + y), wd = eval_weight(space, x - y);
        const double tri = ws - (wx + wy);
        if (rep.triangle_inequality_holds && tri > tol * std::max(1.0, wx + wy)) {
            rep.triangle_inequality_holds = false;
            rep.triangle_witness = WitnessPair{x, y, tri};
        }
        const double par = ws * ws + wd * wd - 2.0 * (wx * wx + wy * wy);
        if (rep.parallelogram_identity_holds &&
            std::abs(par) > tol * std::max(1.0, 2.0 * (wx * wx + wy * wy))) {
            rep.parallelogram_identity_holds = false;
            rep.parallelogram_witness = WitnessPair{x, y, par};
        }
    }
    return rep;
}

SpaceDescriptor product_space(SpaceDescriptor left, SpaceDescriptor right, double p) {
    return SpaceDescriptor::product(std::move(left), std::move(right), p);
}

std::string extended_real_to_string(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace bwangle
