#include "ecd/chaos_degree.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "ecd/errors.hpp"

namespace ecd {

namespace {

// Compensated summation; the degree sums stay reproducible and accurate for
// large occupied sets.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

constexpr double formula_agreement_tolerance = 1e-12;

} // namespace

double EcdReport::degree_bits() const {
    return degree / std::numbers::ln2;
}

EcdReport chaos_degree(const EmpiricalJoint& joint, const EmpiricalMarginal& marginal) {
    if (joint.window() != marginal.window() || joint.partition() != marginal.partition() ||
        joint.total() != marginal.total()) {
        throw consistency_error("chaos_degree: joint and marginal describe different windows");
    }
    if (joint.row_counts() != marginal.counts()) {
        throw consistency_error("chaos_degree: joint row sums do not match the marginal");
    }

    const double total = double(joint.total());
    const auto& bin_weights = marginal.counts();

    // log-ratio form: sum_ij p_ij log(p_i / p_ij). Counts share the
    // normalizer, so the ratio reduces to row count over pair count; every
    // term is nonnegative, and deterministic rows contribute exactly zero.
    KahanSum log_ratio;
    for (const auto& [key, pair_count] : joint.counts()) {
        const double row_count = double(bin_weights.at(key.first));
        log_ratio.add(double(pair_count) / total * std::log(row_count / double(pair_count)));
    }

    // row-entropy form: sum_i p_i S(successors of i), accumulated row by row
    // over the same ascending pair order.
    KahanSum row_entropy_form;
    auto it = joint.counts().begin();
    while (it != joint.counts().end()) {
        const std::uint64_t row = it->first.first;
        const double row_count = double(bin_weights.at(row));
        KahanSum entropy;
        for (; it != joint.counts().end() && it->first.first == row; ++it) {
            const double conditional = double(it->second) / row_count;
            entropy.add(-conditional * std::log(conditional));
        }
        row_entropy_form.add(row_count / total * entropy.sum);
    }

    if (std::abs(log_ratio.sum - row_entropy_form.sum) > formula_agreement_tolerance) {
        throw consistency_error("chaos_degree: formula disagreement " +
                                std::to_string(log_ratio.sum - row_entropy_form.sum));
    }

    std::set<std::uint64_t> visited;
    for (const auto& [key, pair_count] : joint.counts()) {
        visited.insert(key.first);
        visited.insert(key.second);
    }

    return EcdReport{log_ratio.sum, visited.size(), marginal.partition(), marginal.window()};
}

EcdReport ecd_of_sequence(const Orbit& orbit, std::size_t skip, std::size_t m,
                          const PartitionSpec& partition) {
    const EmpiricalMarginal marginal = empirical_marginal(orbit, skip, m, partition);
    const EmpiricalJoint joint = empirical_joint(orbit, skip, m, partition);
    return chaos_degree(joint, marginal);
}

EcdReport ecd_of_sequence(const Orbit& orbit, std::size_t skip, std::size_t m,
                          std::uint32_t bins_per_axis) {
    if (m < 1) {
        throw std::invalid_argument("ecd_of_sequence: m must be at least 1");
    }
    if (orbit.size() < skip + m + 2) {
        throw std::length_error("ecd_of_sequence: orbit too short, need " +
                                std::to_string(skip + m + 2) + " elements, have " +
                                std::to_string(orbit.size()));
    }
    const PartitionSpec partition =
        PartitionSpec::spanning(orbit, skip, skip + m + 1, bins_per_axis);
    return ecd_of_sequence(orbit, skip, m, partition);
}

EcdReport ecd_sup_over_partitions(const Orbit& orbit, std::size_t skip, std::size_t m,
                                  std::vector<std::uint32_t> bin_counts) {
    if (bin_counts.empty()) {
        throw std::invalid_argument("ecd_sup_over_partitions: bin_counts must be non-empty");
    }
    std::sort(bin_counts.begin(), bin_counts.end());
    bin_counts.erase(std::unique(bin_counts.begin(), bin_counts.end()), bin_counts.end());

    EcdReport best = ecd_of_sequence(orbit, skip, m, bin_counts.front());
    for (std::size_t i = 1; i < bin_counts.size(); ++i) {
        EcdReport candidate = ecd_of_sequence(orbit, skip, m, bin_counts[i]);
        if (candidate.degree > best.degree) {
            best = std::move(candidate);
        }
    }
    return best;
}

InitialPointSampler::InitialPointSampler(std::uint64_t seed,
                                         std::vector<std::array<double, 2>> ranges)
    : engine_(seed), ranges_(std::move(ranges)) {
    if (ranges_.empty()) {
        throw std::invalid_argument("InitialPointSampler: at least one axis range required");
    }
    for (const auto& range : ranges_) {
        if (!(range[0] <= range[1]) || !std::isfinite(range[0]) || !std::isfinite(range[1])) {
            throw std::invalid_argument("InitialPointSampler: invalid axis range");
        }
    }
}

std::vector<double> InitialPointSampler::next() {
    std::vector<double> point(ranges_.size());
    for (std::size_t d = 0; d < ranges_.size(); ++d) {
        const double u = double(engine_() >> 11) * 0x1.0p-53; // uniform in [0, 1)
        point[d] = ranges_[d][0] + (ranges_[d][1] - ranges_[d][0]) * u;
    }
    return point;
}

namespace {

struct PairCounts {
    std::map<std::uint64_t, std::uint64_t> marginal;
    std::map<EmpiricalJoint::Key, std::uint64_t> joint;
};

void accumulate_window(const Orbit& orbit, std::size_t skip, std::size_t m,
                       const PartitionSpec& partition, PairCounts& counts) {
    std::uint64_t previous = bin_index(orbit.point(skip), partition);
    for (std::size_t k = skip; k <= skip + m; ++k) {
        const std::uint64_t next = bin_index(orbit.point(k + 1), partition);
        ++counts.marginal[previous];
        ++counts.joint[{previous, next}];
        previous = next;
    }
}

void check_sample_orbit(const Orbit& orbit, std::size_t skip, std::size_t m,
                        std::size_t dims) {
    if (orbit.dims() != dims) {
        throw std::invalid_argument("ecd_monte_carlo: orbit dimension mismatch");
    }
    if (orbit.size() < skip + m + 2) {
        throw std::length_error("ecd_monte_carlo: sampled orbit too short, need " +
                                std::to_string(skip + m + 2) + " elements");
    }
}

} // namespace

EmpiricalPair empirical_pair_monte_carlo(const OrbitFactory& factory,
                                         InitialPointSampler& sampler, std::size_t samples,
                                         std::size_t skip, std::size_t m,
                                         const PartitionSpec& partition) {
    if (samples < 1) {
        throw std::invalid_argument("ecd_monte_carlo: samples must be at least 1");
    }
    if (m < 1) {
        throw std::invalid_argument("ecd_monte_carlo: m must be at least 1");
    }
    PairCounts counts;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::vector<double> x0 = sampler.next();
        const Orbit orbit = factory(x0);
        check_sample_orbit(orbit, skip, m, partition.dims());
        accumulate_window(orbit, skip, m, partition, counts);
    }
    const std::uint64_t total = std::uint64_t(samples) * std::uint64_t(m + 1);
    const Window window{skip, m};
    return EmpiricalPair{
        EmpiricalMarginal(partition, window, std::move(counts.marginal), total),
        EmpiricalJoint(partition, window, std::move(counts.joint), total)};
}

EcdReport ecd_monte_carlo(const OrbitFactory& factory, InitialPointSampler& sampler,
                          std::size_t samples, std::size_t skip, std::size_t m,
                          const PartitionSpec& partition) {
    const EmpiricalPair pair =
        empirical_pair_monte_carlo(factory, sampler, samples, skip, m, partition);
    return chaos_degree(pair.joint, pair.marginal);
}

EcdReport ecd_monte_carlo(const OrbitFactory& factory, InitialPointSampler& sampler,
                          std::size_t samples, std::size_t skip, std::size_t m,
                          std::uint32_t bins_per_axis) {
    if (samples < 1) {
        throw std::invalid_argument("ecd_monte_carlo: samples must be at least 1");
    }
    if (m < 1) {
        throw std::invalid_argument("ecd_monte_carlo: m must be at least 1");
    }
    std::vector<Orbit> orbits;
    orbits.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        const std::vector<double> x0 = sampler.next();
        orbits.push_back(factory(x0));
    }
    const std::size_t dims = orbits.front().dims();
    for (const Orbit& orbit : orbits) {
        check_sample_orbit(orbit, skip, m, dims);
    }

    std::vector<double> lo(orbits.front().point(skip).begin(), orbits.front().point(skip).end());
    std::vector<double> hi = lo;
    for (const Orbit& orbit : orbits) {
        for (std::size_t k = skip; k <= skip + m + 1; ++k) {
            const auto p = orbit.point(k);
            for (std::size_t d = 0; d < dims; ++d) {
                lo[d] = std::min(lo[d], p[d]);
                hi[d] = std::max(hi[d], p[d]);
            }
        }
    }
    const PartitionSpec partition = PartitionSpec::over(std::move(lo), std::move(hi), bins_per_axis);

    PairCounts counts;
    for (const Orbit& orbit : orbits) {
        accumulate_window(orbit, skip, m, partition, counts);
    }
    const std::uint64_t total = std::uint64_t(samples) * std::uint64_t(m + 1);
    const Window window{skip, m};
    const EmpiricalMarginal marginal(partition, window, std::move(counts.marginal), total);
    const EmpiricalJoint joint(partition, window, std::move(counts.joint), total);
    return chaos_degree(joint, marginal);
}

} // namespace ecd
