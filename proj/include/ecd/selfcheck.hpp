#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecd/chaos_degree.hpp"

namespace ecd::selfcheck {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Dense two-index reimplementation of the chaos degree: flat count arrays,
// nested loops, its own binning arithmetic. Kept deliberately separate from
// the sparse pipeline so the two can cross-check each other. Intended for
// small partitions (total bins^2 doubles are materialized).
double dense_chaos_degree(const Orbit& orbit, std::size_t skip, std::size_t m,
                          const PartitionSpec& partition);

// Four stability cases realized as constant observable sequences through the
// matrix route (fixed unitary conjugation, identity, constant target state,
// projective dephasing); each must score exactly zero at every resolution in
// {2, 10, 100}.
std::vector<CheckResult> zero_degree_suite();

// Closed-form rotation vs 2x2 conjugation on randomized tuples, plus length
// preservation of the rotation.
std::vector<CheckResult> rotation_oracle_checks(std::size_t tuples = 1000,
                                                std::uint64_t seed = 0x5eedULL);

// First-recurrence z orbits vs the logistic map: per-step residuals over 16
// angles, and equality of the chaos degrees of the z orbit and its one-step
// logistic image orbit under a shared partition.
std::vector<CheckResult> logistic_equivalence_checks(std::size_t theta_count = 16,
                                                     std::size_t steps = 1000);

// Marginal/joint/channel identities and sparse-vs-dense equality on a set of
// representative computed pairs (1-D and 2-D, single-orbit and Monte Carlo).
std::vector<CheckResult> structural_invariant_checks();

std::vector<CheckResult> run_all();

bool all_passed(const std::vector<CheckResult>& results);

} // namespace ecd::selfcheck
