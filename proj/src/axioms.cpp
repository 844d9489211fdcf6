#include "bwangle/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace bwangle {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kIdentityTol = 1e-9;
// arccos amplifies last-digit cosine noise to ~1e-8 near 0 and pi, so the
// degenerate identities (angle 0 with itself, pi with the antipode) get a
// looser budget.
constexpr double kDegenerateTol = 1e-6;
constexpr double kConditionMargin = 1e-6;  // skip |cos| > 1 - margin in sums of angles

struct PairSampler {
    const SpaceDescriptor& space;
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> angle_dist{0.0, 2.0 * kPi};
    std::uniform_real_distribution<double> scale_dist{0.1, 3.0};
    std::normal_distribution<double> gauss{0.0, 1.0};

    PairSampler(const SpaceDescriptor& s, std::uint64_t seed) : space(s), rng(seed) {}

    Vector draw() {
        for (;;) {
            Vector v(space.dimension);
            if (space.dimension == 2) {
                const double th = angle_dist(rng);
                v << std::cos(th), std::sin(th);
            } else {
                for (int i = 0; i < space.dimension; ++i) v[i] = gauss(rng);
            }
            const double w = eval_weight(space, v);
            if (w > 1e-9) return Vector(v / w * scale_dist(rng));
        }
    }
};

Vector basis_unit(const SpaceDescriptor& space, int axis) {
    Vector v = Vector::Zero(space.dimension);
    v[axis] = 1.0;
    return normalize(space, v);
}

struct IdentityCheck {
    AxiomResult result;
    int checked = 0;

    explicit IdentityCheck(std::string name) { result.name = std::move(name); }

    void observe(double gap, std::initializer_list<Vector> witness) {
        ++checked;
        if (std::abs(gap) > std::abs(result.discrepancy)) {
            result.discrepancy = gap;
            result.witness.assign(witness);
        }
    }

    AxiomResult finish(double tol) {
        if (checked == 0) {
            result.status = AxiomStatus::Skipped;
            result.note = "no evaluable sample pairs";
        } else {
            result.status = std::abs(result.discrepancy) <= tol ? AxiomStatus::Pass
                                                                : AxiomStatus::Fail;
        }
        return result;
    }
};

bool well_conditioned(const AngleOutcome& a) {
    return a.defined && std::abs(a.cosine) <= 1.0 - kConditionMargin;
}

AxiomResult check_an1(const SpaceDescriptor& space, double rho) {
    AxiomResult res;
    res.name = "An1";
    const Vector x = basis_unit(space, 0);
    const int grid = 2000;  // even, so the exact antipode theta = pi is on the grid
    std::vector<double> angles;
    angles.reserve(grid);
    int undefined = 0;
    for (int k = 0; k < grid; ++k) {
        const double th = 2.0 * kPi * k / grid;
        Vector dir = Vector::Zero(space.dimension);
        dir[0] = std::cos(th);
        dir[1] = std::sin(th);
        const double w = eval_weight(space, dir);
        if (w <= 1e-9) {
            ++undefined;
            continue;
        }
        const AngleOutcome a = rho_angle(space, x, dir / w, rho);
        if (!a.defined) {
            ++undefined;
            continue;
        }
        angles.push_back(a.angle_rad);
    }
    if (undefined > 0) {
        res.status = AxiomStatus::Fail;
        res.discrepancy = static_cast<double>(undefined) / grid;
        res.note = "angle undefined on part of the direction grid";
        return res;
    }
    const auto [mn, mx] = std::minmax_element(angles.begin(), angles.end());
    double mid_gap = kPi;
    double max_jump = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        mid_gap = std::min(mid_gap, std::abs(angles[i] - kPi / 2.0));
        if (i > 0) max_jump = std::max(max_jump, std::abs(angles[i] - angles[i - 1]));
    }
    std::ostringstream os;
    os << "image [" << *mn << ", " << *mx << "], midpoint gap " << mid_gap << ", max grid jump "
       << max_jump;
    res.note = os.str();
    // surjectivity: both endpoints reached, and pi/2 bracketed at grid
    // resolution (one jump cannot skip past the midpoint)
    const bool covers = *mn <= 1e-3 && *mx >= kPi - 1e-3 && mid_gap <= max_jump + 1e-9;
    const bool modulus_ok = max_jump <= 0.05;
    res.discrepancy = std::max({*mn, kPi - *mx, mid_gap});
    res.status = covers && modulus_ok ? AxiomStatus::Pass : AxiomStatus::Fail;
    return res;
}

AxiomResult check_an11(const SpaceDescriptor& space, double rho) {
    AxiomResult res;
    res.name = "An11";
    const Vector x = basis_unit(space, 0);
    const Vector y = basis_unit(space, 1);
    std::vector<double> ts;
    for (int e = 3; e >= -3; --e)
        for (const double m : {5.0, 2.0, 1.0}) ts.push_back(-m * std::pow(10.0, e));
    ts.push_back(0.0);
    for (int e = -3; e <= 3; ++e)
        for (const double m : {1.0, 2.0, 5.0}) ts.push_back(m * std::pow(10.0, e));

    std::vector<double> angles;
    for (const double t : ts) {
        const Vector yt = y + t * x;
        if (eval_weight(space, yt) <= 1e-12) {
            res.status = AxiomStatus::Skipped;
            res.note = "y + t*x hits zero weight";
            return res;
        }
        const AngleOutcome a = rho_angle(space, x, yt, rho);
        if (!a.defined) {
            res.status = AxiomStatus::Skipped;
            res.note = "angle undefined along the t sweep";
            return res;
        }
        angles.push_back(a.angle_rad);
    }
    double worst_increase = 0.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 1; i < angles.size(); ++i)
        if (angles[i] - angles[i - 1] > worst_increase) {
            worst_increase = angles[i] - angles[i - 1];
            worst_i = i;
        }
    const bool in_range = angles.front() > 0.0 && angles.back() < kPi &&
                          angles.front() >= kPi - 0.1 && angles.back() <= 0.1;
    res.discrepancy = worst_increase;
    std::ostringstream os;
    os << "range [" << angles.back() << ", " << angles.front() << "], worst increase "
       << worst_increase;
    res.note = os.str();
    if (worst_increase > 1e-12) {
        res.witness = {x, Vector(y + ts[worst_i - 1] * x), Vector(y + ts[worst_i] * x)};
        res.status = AxiomStatus::Fail;
    } else {
        res.status = in_range ? AxiomStatus::Pass : AxiomStatus::Fail;
    }
    return res;
}

}  // namespace

AxiomReport check_axioms(const SpaceDescriptor& space, double rho, int samples,
                         std::uint64_t seed) {
    if (!space.positive_definite)
        throw NotPositiveDefiniteError("axiom checks require a positive definite space");
    AxiomReport rep;
    rep.space_label = space.label();
    rep.rho = rho;
    rep.sample_count = samples;
    rep.seed = seed;

    const auto angle = [&](const Vector& a, const Vector& b) { return rho_angle(space, a, b, rho); };

    rep.results.push_back(check_an1(space, rho));

    PairSampler sampler(space, seed);
    IdentityCheck an2("An2"), an3("An3"), an4("An4"), an5("An5"), an6("An6"), an7("An7");
    std::uniform_real_distribution<double> pos_scale(0.1, 10.0);
    for (int k = 0; k < samples; ++k) {
        const Vector x = sampler.draw();
        const Vector y = sampler.draw();
        const AngleOutcome axx = angle(x, x);
        if (axx.defined) an2.observe(axx.angle_rad - 0.0, {x});
        const AngleOutcome amxx = angle(-x, x);
        if (amxx.defined) an3.observe(amxx.angle_rad - kPi, {x});

        const AngleOutcome axy = angle(x, y);
        if (!axy.defined) {
            ++rep.undefined_pairs;
            continue;
        }
        if (!well_conditioned(axy)) continue;
        const AngleOutcome ayx = angle(y, x);
        if (ayx.defined) an4.observe(axy.angle_rad - ayx.angle_rad, {x, y});
        const double r = pos_scale(sampler.rng), s = pos_scale(sampler.rng);
        const AngleOutcome ascaled = angle(r * x, s * y);
        if (ascaled.defined) an5.observe(ascaled.angle_rad - axy.angle_rad, {x, y});
        const AngleOutcome aneg = angle(-x, -y);
        if (aneg.defined) an6.observe(aneg.angle_rad - axy.angle_rad, {x, y});
        const AngleOutcome aflip = angle(-x, y);
        if (aflip.defined)
            an7.observe(axy.angle_rad + aflip.angle_rad - kPi, {x, y});
    }
    rep.results.push_back(an2.finish(kDegenerateTol));
    rep.results.push_back(an3.finish(kDegenerateTol));
    for (IdentityCheck* c : {&an4, &an5, &an6, &an7})
        rep.results.push_back(c->finish(kIdentityTol));

    // An8-An10: violation search, canonical axis pair first.
    IdentityCheck an8("An8"), an9("An9"), an10("An10");
    PairSampler searcher(space, seed ^ 0x9e3779b97f4a7c15ull);
    const int search_pairs = std::min(samples, 200);
    for (int k = 0; k < search_pairs; ++k) {
        Vector x, y;
        if (k == 0) {
            x = basis_unit(space, 0);
            y = basis_unit(space, 1);
        } else {
            x = searcher.draw();
            y = searcher.draw();
        }
        const AngleOutcome axy = angle(x, y);
        if (!well_conditioned(axy)) continue;
        {
            const AngleOutcome a1 = angle(x, x + y), a2 = angle(x + y, y);
            if (well_conditioned(a1) && well_conditioned(a2))
                an8.observe(a1.angle_rad + a2.angle_rad - axy.angle_rad, {x, y});
        }
        {
            const AngleOutcome a1 = angle(-x, y - x), a2 = angle(-y, x - y);
            if (well_conditioned(a1) && well_conditioned(a2))
                an9.observe(axy.angle_rad + a1.angle_rad + a2.angle_rad - kPi, {x, y});
        }
        {
            const AngleOutcome a1 = angle(y, y - x), a2 = angle(x, x - y);
            const AngleOutcome rhs = angle(-x, y);
            if (well_conditioned(a1) && well_conditioned(a2) && well_conditioned(rhs))
                an10.observe(a1.angle_rad + a2.angle_rad - rhs.angle_rad, {x, y});
        }
    }
    for (IdentityCheck* c : {&an8, &an9, &an10}) rep.results.push_back(c->finish(kIdentityTol));

    rep.results.push_back(check_an11(space, rho));
    return rep;
}

std::vector<CounterexampleRow> reproduce_counterexamples() {
    const SpaceDescriptor space = SpaceDescriptor::hoelder(1.0);
    Vector e1(2), e2(2), diag(2);
    e1 << 1, 0;
    e2 << 0, 1;
    diag << 1, 1;
    const auto a0 = [&](const Vector& a, const Vector& b) {
        return rho_angle(space, a, b, 0.0).angle_rad;
    };
    const double right = kPi / 2.0;
    const double acos34 = std::acos(0.75);

    std::vector<CounterexampleRow> rows;
    const auto add = [&rows](std::string name, double computed, double closed) {
        rows.push_back({std::move(name), computed, closed, computed - closed});
    };
    add("angle((1,0),(0,1))", a0(e1, e2), right);
    add("angle((1,0),(1,1))", a0(e1, diag), acos34);
    add("angle((1,1),(0,1))", a0(diag, e2), acos34);
    // An8: angle(x, x+y) + angle(x+y, y) differs from angle(x, y).
    add("An8 gap", a0(e1, diag) + a0(diag, e2) - a0(e1, e2), 2.0 * acos34 - right);
    // An9: the triangle angle sum misses pi.
    add("An9 gap",
        a0(e1, e2) + a0(-e1, Vector(e2 - e1)) + a0(-e2, Vector(e1 - e2)) - kPi,
        right + 2.0 * acos34 - kPi);
    // An10: angle(y, y-x) + angle(x, x-y) differs from angle(-x, y).
    add("An10 gap",
        a0(e2, Vector(e2 - e1)) + a0(e1, Vector(e1 - e2)) - a0(-e1, e2),
        2.0 * acos34 - right);
    return rows;
}

const char* axiom_status_name(AxiomStatus s) {
    switch (s) {
        case AxiomStatus::Pass: return "pass";
        case AxiomStatus::Fail: return "fail";
        case AxiomStatus::Skipped: return "skipped";
    }
    return "unknown";
}

}  // namespace bwangle
