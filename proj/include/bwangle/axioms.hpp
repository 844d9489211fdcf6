#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bwangle/rho.hpp"

namespace bwangle {

enum class AxiomStatus { Pass, Fail, Skipped };

struct AxiomResult {
    std::string name;  // "An1" .. "An11"
    AxiomStatus status = AxiomStatus::Skipped;
    std::vector<Vector> witness;  // vectors realizing the discrepancy
    double discrepancy = 0.0;
    std::string note;
};

struct AxiomReport {
    std::string space_label;
    double rho = 0.0;
    std::vector<AxiomResult> results;
    int sample_count = 0;
    std::uint64_t seed = 0;
    int undefined_pairs = 0;  // sampled pairs whose angle does not exist
};

/// Property-tests the angle axioms An1-An11 at the given exponent on
/// seeded random pairs.  An2-An7 are identities (tolerance 1e-9 away
/// from near-parallel degeneracies), An8-An10 are searched for
/// violations, An11 is a monotonicity sweep of t -> angle(x, y + t*x).
AxiomReport check_axioms(const SpaceDescriptor& space, double rho, int samples = 10000,
                         std::uint64_t seed = 0x5eed);

struct CounterexampleRow {
    std::string name;
    double computed = 0.0;
    double closed_form = 0.0;
    double diff = 0.0;
};

/// The fixed angle computations in (R^2, sum-norm) at rho = 0 showing
/// that An8, An9 and An10 fail there: right-angle pair, arccos(3/4)
/// values, and the three axiom gaps.
std::vector<CounterexampleRow> reproduce_counterexamples();

const char* axiom_status_name(AxiomStatus s);

}  // namespace bwangle
