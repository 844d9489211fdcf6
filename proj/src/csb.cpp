#include "bwangle/csb.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bwangle/parallel.hpp"
#include "bwangle/rho.hpp"

namespace bwangle {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Cell {
    double value = -1.0;
    int i = 0, j = 0;
};

}  // namespace

double csb_value(const SpaceDescriptor& space, Eigen::Ref<const Vector> u,
                 Eigen::Ref<const Vector> v, double rho) {
    const double s = eval_weight(space, u + v);
    const double d = eval_weight(space, u - v);
    const double sigma4 = (s * s + d * d) / 4.0;
    return std::abs(s * s - d * d) / 4.0 * sigma_power(sigma4, rho);
}

namespace {

Vector unit_at(const SpaceDescriptor& space, double theta) {
    Vector dir(2);
    dir << std::cos(theta), std::sin(theta);
    const double w = eval_weight(space, dir);
    if (w <= 0.0) throw NumericalError("zero weight direction in a positive definite space");
    return dir / w;
}

// Local descent over (theta_a, theta_b) with a shrinking bracket; only
// improvements are accepted, so more steps never hurt.  Besides the
// single-coordinate moves the joint anti-symmetric "spread" moves matter:
// the maximizing pairs near a sphere corner straddle it symmetrically,
// and from a collapsed pair no single-coordinate move improves.
void refine_start(const SpaceDescriptor& space, double rho, int steps, double h0, double& theta_a,
                  double& theta_b, double& best) {
    static constexpr double kDirs[][2] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                                          {1, -1}, {-1, 1}, {1, 1}, {-1, -1}};
    double h = h0;
    for (int step = 0; step < steps; ++step) {
        double next_a = theta_a, next_b = theta_b;
        for (const double scale : {1.0, 0.5})
            for (const auto& dir : kDirs) {
                const double ta = theta_a + scale * h * dir[0];
                const double tb = theta_b + scale * h * dir[1];
                const double f = csb_value(space, unit_at(space, ta), unit_at(space, tb), rho);
                if (f > best) {
                    best = f;
                    next_a = ta;
                    next_b = tb;
                }
            }
        theta_a = next_a;
        theta_b = next_b;
        h *= 0.65;
    }
}

CsbReport csb_sup_grid(const SpaceDescriptor& space, double rho, const CsbConfig& cfg) {
    const int res = cfg.resolution;
    std::vector<Vector> units(static_cast<std::size_t>(res));
    for (int k = 0; k < res; ++k) units[static_cast<std::size_t>(k)] = unit_at(space, 2.0 * kPi * k / res);

    // f is symmetric in (i, j); upper triangle only.  Per-row bests are
    // merged in row order so the reduction is traversal-independent.  The
    // diagonal always scores exactly 1, so refinement starts are ranked
    // by the best strictly off-diagonal cell of each row instead.
    std::vector<Cell> row_best(static_cast<std::size_t>(res));
    std::vector<Cell> row_best_off(static_cast<std::size_t>(res));
    parallel_for(res, [&](int i) {
        Cell best, best_off;
        const Vector& u = units[static_cast<std::size_t>(i)];
        for (int j = i; j < res; ++j) {
            const double f = csb_value(space, u, units[static_cast<std::size_t>(j)], rho);
            if (f > best.value) best = {f, i, j};
            if (j > i && f > best_off.value) best_off = {f, i, j};
        }
        row_best[static_cast<std::size_t>(i)] = best;
        row_best_off[static_cast<std::size_t>(i)] = best_off;
    });

    Cell global;
    for (int i = 0; i < res; ++i)
        if (row_best[static_cast<std::size_t>(i)].value > global.value)
            global = row_best[static_cast<std::size_t>(i)];

    double best_val = global.value;
    double best_ta = 2.0 * kPi * global.i / res;
    double best_tb = 2.0 * kPi * global.j / res;
    const double h0 = 2.0 * kPi / res;
    const auto descend = [&](int i, int j, int steps) {
        double ta = 2.0 * kPi * i / res;
        double tb = 2.0 * kPi * j / res;
        double val = csb_value(space, units[static_cast<std::size_t>(i % res)],
                               units[static_cast<std::size_t>(j % res)], rho);
        refine_start(space, rho, steps, h0, ta, tb, val);
        if (val > best_val) {
            best_val = val;
            best_ta = ta;
            best_tb = tb;
        }
    };

    if (cfg.refine > 0) {
        // Long descents from the best cells of the top-ranked rows.
        std::vector<Cell> starts = row_best_off;
        std::stable_sort(starts.begin(), starts.end(),
                         [](const Cell& a, const Cell& b) { return a.value > b.value; });
        starts.resize(std::min<std::size_t>(starts.size(), static_cast<std::size_t>(cfg.starts)));
        for (const Cell& c : starts) descend(c.i, c.j, cfg.refine);

        // Short descents from the pair straddling every grid node: basins
        // of corner-induced violations are far narrower than a grid cell
        // and invisible to the ranking above.
        for (int i = 0; i < res; ++i) descend(i, i + 2, std::min(cfg.refine, 24));
    }

    CsbReport rep;
    rep.rho = rho;
    rep.sup_estimate = best_val;
    rep.witness_x = unit_at(space, best_ta);
    rep.witness_y = unit_at(space, best_tb);
    rep.grid_resolution = res;
    rep.refinement_steps = cfg.refine;
    rep.tolerance = cfg.tol;
    rep.seed = cfg.seed;
    rep.holds = rep.sup_estimate <= 1.0 + cfg.tol;
    return rep;
}

CsbReport csb_sup_random(const SpaceDescriptor& space, double rho, const CsbConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto draw_unit = [&]() {
        Vector v(space.dimension);
        for (;;) {
            for (int i = 0; i < space.dimension; ++i) v[i] = gauss(rng);
            const double w = eval_weight(space, v);
            if (w > 1e-12) return Vector(v / w);
        }
    };
    double best = -1.0;
    Vector bx, by;
    for (long k = 0; k < cfg.random_pairs; ++k) {
        Vector u = draw_unit(), v = draw_unit();
        const double f = csb_value(space, u, v, rho);
        if (f > best) {
            best = f;
            bx = u;
            by = v;
        }
    }
    // Local refinement: per-coordinate perturbation with a shrinking step.
    double h = 0.1;
    for (int step = 0; step < cfg.refine; ++step) {
        for (int side = 0; side < 2; ++side)
            for (int i = 0; i < space.dimension; ++i)
                for (const double off : {-h, h}) {
                    Vector u = bx, v = by;
                    (side == 0 ? u : v)[i] += off;
                    const double wu = eval_weight(space, u), wv = eval_weight(space, v);
                    if (wu <= 1e-12 || wv <= 1e-12) continue;
                    u /= wu;
                    v /= wv;
                    const double f = csb_value(space, u, v, rho);
                    if (f > best) {
                        best = f;
                        bx = u;
                        by = v;
                    }
                }
        h *= 0.65;
    }
    CsbReport rep;
    rep.rho = rho;
    rep.sup_estimate = best;
    rep.witness_x = bx;
    rep.witness_y = by;
    rep.grid_resolution = 0;
    rep.refinement_steps = cfg.refine;
    rep.tolerance = cfg.tol;
    rep.seed = cfg.seed;
    rep.holds = best <= 1.0 + cfg.tol;
    return rep;
}

}  // namespace

CsbReport csb_sup(const SpaceDescriptor& space, double rho, const CsbConfig& config) {
    if (!space.positive_definite)
        throw NotPositiveDefiniteError("CSB search requires a positive definite space");
    if (space.dimension == 2) return csb_sup_grid(space, rho, config);
    return csb_sup_random(space, rho, config);
}

CsbReport csb_sup(const SpaceDescriptor& space, double rho, int resolution, int refine) {
    CsbConfig cfg;
    cfg.resolution = resolution;
    cfg.refine = refine;
    return csb_sup(space, rho, cfg);
}

bool has_angle(const SpaceDescriptor& space, double rho, double tol, const CsbConfig& config) {
    CsbConfig cfg = config;
    cfg.tol = tol;
    return csb_sup(space, rho, cfg).holds;
}

}  // namespace bwangle
