#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "ecd/distributions.hpp"

namespace ecd {

// One chaos-degree evaluation. degree is the conditional entropy
//   D = sum_{i,j} p_ij log(p_i / p_ij)
// of the one-step transition over the partition, in nats; zero means every
// occupied bin has a deterministic successor, positive means branching.
// occupied_bins counts the distinct bins visited in the window (including
// the trailing joint endpoint), so 0 <= degree <= log(occupied_bins).
struct EcdReport {
    double degree = 0.0;
    std::uint64_t occupied_bins = 0;
    PartitionSpec partition;
    Window window;

    double degree_bits() const;
};

// Evaluates D for a consistent pair. Both the log-ratio form and the
// row-entropy form sum_i p_i S(row_i) are computed and must agree within
// 1e-12; the degree reported is the log-ratio form.
EcdReport chaos_degree(const EmpiricalJoint& joint, const EmpiricalMarginal& marginal);

// Full pipeline over one orbit window with an explicit partition.
EcdReport ecd_of_sequence(const Orbit& orbit, std::size_t skip, std::size_t m,
                          const PartitionSpec& partition);

// Same with the box derived from the window itself (per-axis min/max over
// elements skip..skip+m+1). A constant sequence yields the degenerate
// single-bin report: degree 0, occupied_bins 1.
EcdReport ecd_of_sequence(const Orbit& orbit, std::size_t skip, std::size_t m,
                          std::uint32_t bins_per_axis);

// Maximum of ecd_of_sequence over equipartitions with the given per-axis bin
// counts; the report carries the maximizing partition. Ties keep the
// smallest bin count.
EcdReport ecd_sup_over_partitions(const Orbit& orbit, std::size_t skip, std::size_t m,
                                  std::vector<std::uint32_t> bin_counts);

// Deterministic seeded source of initial points, uniform per axis over the
// given [lo, hi] ranges. Draws use an explicit 53-bit mantissa construction
// so streams are reproducible across platforms.
class InitialPointSampler {
public:
    InitialPointSampler(std::uint64_t seed, std::vector<std::array<double, 2>> ranges);

    std::vector<double> next();
    std::size_t dims() const noexcept { return ranges_.size(); }

private:
    std::mt19937_64 engine_;
    std::vector<std::array<double, 2>> ranges_;
};

using OrbitFactory = std::function<Orbit(std::span<const double> x0)>;

struct EmpiricalPair {
    EmpiricalMarginal marginal;
    EmpiricalJoint joint;
};

// Indicator counts of the window accumulated across `samples` orbits drawn
// from the sampler, normalized once at the end; the empirical realization of
// an initial-condition measure.
EmpiricalPair empirical_pair_monte_carlo(const OrbitFactory& factory,
                                         InitialPointSampler& sampler,
                                         std::size_t samples, std::size_t skip,
                                         std::size_t m, const PartitionSpec& partition);

EcdReport ecd_monte_carlo(const OrbitFactory& factory, InitialPointSampler& sampler,
                          std::size_t samples, std::size_t skip, std::size_t m,
                          const PartitionSpec& partition);

// Auto-interval variant: the box spans the windows of all sampled orbits.
EcdReport ecd_monte_carlo(const OrbitFactory& factory, InitialPointSampler& sampler,
                          std::size_t samples, std::size_t skip, std::size_t m,
                          std::uint32_t bins_per_axis);

} // namespace ecd
