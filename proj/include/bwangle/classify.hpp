#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bwangle/csb.hpp"

namespace bwangle {

/// The interval (nu, mu) of exponents rho for which the space has the
/// angle; +-infinity is reported when validity persists at |rho| =
/// rho_cap.  Finite endpoints are the last rho found valid, so re-testing
/// them succeeds at the same tolerance.
struct UpsilonResult {
    double nu = -1.0;
    double mu = -1.0;
    bool nu_attained = false;
    bool mu_attained = false;
    double bracket_tol = 1e-3;
    double rho_cap = 64.0;
    CsbConfig csb;
};

UpsilonResult upsilon(const SpaceDescriptor& space, double bracket_tol = 1e-3,
                      double rho_cap = 64.0, const CsbConfig& csb = {});

struct ClassEntry {
    std::string tag;  // pdBW, NORM, IPspace, pdBW_rho, NORM_rho
    bool member = false;
    std::string evidence;
    bool has_rho = false;
    double rho = 0.0;
};

struct ClassMembership {
    std::string space_label;
    std::vector<ClassEntry> entries;
};

/// Samples the class memberships: pdBW / NORM / IPspace from structural
/// sampling, the rho-indexed classes from the CSB search.
ClassMembership class_report(const SpaceDescriptor& space, const std::vector<double>& rho_list,
                             const CsbConfig& csb = {});

struct SweepRow {
    std::string param;
    UpsilonResult ups;
    std::vector<bool> has_angle_row;
};

struct ProperInclusionFlag {
    double rho = 0.0;
    std::string valid_member, invalid_member;
};

struct SweepTable {
    std::vector<double> rho_grid;
    std::vector<SweepRow> rows;
    std::vector<ProperInclusionFlag> proper_flags;
};

struct SweepConfig {
    double bracket_tol = 1e-3;
    double rho_cap = 64.0;
    CsbConfig csb{.resolution = 256};
};

/// One row per family member: Upsilon plus the validity indicator over
/// rho_grid; rows that disagree at some grid rho are flagged as evidence
/// of a proper class inclusion.
SweepTable conjecture_sweep(const std::vector<std::pair<std::string, SpaceDescriptor>>& family,
                            const std::vector<double>& rho_grid, const SweepConfig& config = {});

void write_sweep_csv(std::ostream& os, const SweepTable& table);

}  // namespace bwangle
