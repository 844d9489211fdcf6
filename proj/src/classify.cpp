#include "bwangle/classify.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "bwangle/parallel.hpp"

namespace bwangle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool valid_at(const SpaceDescriptor& space, double rho, const CsbConfig& csb) {
    return csb_sup(space, rho, csb).holds;
}

// Pushes the valid endpoint outward from -1 by doubling steps, then
// bisects the (valid, invalid) bracket.  direction is +1 for mu, -1 for
// nu.  Returns the last rho verified valid, or +-infinity past the cap.
double boundary(const SpaceDescriptor& space, int direction, double bracket_tol, double rho_cap,
                const CsbConfig& csb) {
    double lo = -1.0;  // always valid
    double step = 1.0;
    double hi = 0.0;
    bool bracketed = false;
    for (;;) {
        double probe = -1.0 + direction * step;
        if (std::abs(probe) >= rho_cap) {
            probe = direction * rho_cap;
            if (valid_at(space, probe, csb)) return direction * kInf;
            hi = probe;
            bracketed = true;
            break;
        }
        if (!valid_at(space, probe, csb)) {
            hi = probe;
            bracketed = true;
            break;
        }
        lo = probe;
        step *= 2.0;
    }
    (void)bracketed;
    while (std::abs(hi - lo) > bracket_tol) {
        const double mid = 0.5 * (lo + hi);
        if (valid_at(space, mid, csb))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

UpsilonResult upsilon(const SpaceDescriptor& space, double bracket_tol, double rho_cap,
                      const CsbConfig& csb) {
    if (!space.positive_definite)
        throw NotPositiveDefiniteError("upsilon requires a positive definite space");
    if (!valid_at(space, -1.0, csb))
        throw NumericalError("CSB search reports a violation at rho = -1");
    UpsilonResult out;
    out.bracket_tol = bracket_tol;
    out.rho_cap = rho_cap;
    out.csb = csb;
    out.mu = boundary(space, +1, bracket_tol, rho_cap, csb);
    out.nu = boundary(space, -1, bracket_tol, rho_cap, csb);
    out.mu_attained = std::isfinite(out.mu) && valid_at(space, out.mu, csb);
    out.nu_attained = std::isfinite(out.nu) && valid_at(space, out.nu, csb);
    return out;
}

ClassMembership class_report(const SpaceDescriptor& space, const std::vector<double>& rho_list,
                             const CsbConfig& csb) {
    ClassMembership out;
    out.space_label = space.label();
    const StructureReport st = structure_report(space);

    const auto note = [](int samples, const char* what) {
        std::ostringstream os;
        os << what << " over " << samples << " sampled pairs";
        return os.str();
    };
    const bool pd = st.is_positive_definite;
    const bool norm = pd && st.triangle_inequality_holds;
    const bool ip = norm && st.parallelogram_identity_holds;
    out.entries.push_back({"pdBW", pd, note(st.sample_count, "positive definiteness"), false, 0.0});
    out.entries.push_back({"NORM", norm, note(st.sample_count, "triangle inequality"), false, 0.0});
    out.entries.push_back(
        {"IPspace", ip, note(st.sample_count, "parallelogram identity"), false, 0.0});

    for (const double rho : rho_list) {
        bool has = false;
        std::string evidence;
        if (!pd) {
            evidence = "not positive definite";
        } else {
            const CsbReport rep = csb_sup(space, rho, csb);
            has = rep.holds;
            std::ostringstream os;
            os << "CSB sup estimate " << rep.sup_estimate << " at resolution "
               << rep.grid_resolution;
            evidence = os.str();
        }
        out.entries.push_back({"pdBW_rho", has, evidence, true, rho});
        out.entries.push_back({"NORM_rho", norm && has,
                               norm ? evidence : "triangle inequality fails", true, rho});
    }
    return out;
}

SweepTable conjecture_sweep(const std::vector<std::pair<std::string, SpaceDescriptor>>& family,
                            const std::vector<double>& rho_grid, const SweepConfig& config) {
    SweepTable table;
    table.rho_grid = rho_grid;
    table.rows.resize(family.size());
    parallel_for(static_cast<int>(family.size()), [&](int i) {
        const auto& [name, space] = family[static_cast<std::size_t>(i)];
        SweepRow row;
        row.param = name;
        row.ups = upsilon(space, config.bracket_tol, config.rho_cap, config.csb);
        row.has_angle_row.reserve(rho_grid.size());
        for (const double rho : rho_grid)
            row.has_angle_row.push_back(csb_sup(space, rho, config.csb).holds);
        table.rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    for (std::size_t k = 0; k < rho_grid.size(); ++k) {
        const SweepRow* valid = nullptr;
        const SweepRow* invalid = nullptr;
        for (const SweepRow& row : table.rows)
            (row.has_angle_row[k] ? valid : invalid) = &row;
        if (valid && invalid)
            table.proper_flags.push_back({rho_grid[k], valid->param, invalid->param});
    }
    return table;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
    os << "family_param,nu,mu,nu_attained,mu_attained";
    for (const double rho : table.rho_grid) os << ",rho_" << rho;
    os << "\n";
    for (const SweepRow& row : table.rows) {
        os << row.param << "," << extended_real_to_string(row.ups.nu) << ","
           << extended_real_to_string(row.ups.mu) << "," << (row.ups.nu_attained ? 1 : 0) << ","
           << (row.ups.mu_attained ? 1 : 0);
        for (const bool h : row.has_angle_row) os << "," << (h ? 1 : 0);
        os << "\n";
    }
}

}  // namespace bwangle
