#include "ecd/distributions.hpp"

#include <cmath>
#include <string>

#include "ecd/errors.hpp"

namespace ecd {

namespace {

void check_window(const Window& window) {
    if (window.m < 1) {
        throw std::invalid_argument("Window: m must be at least 1");
    }
}

} // namespace

EmpiricalMarginal::EmpiricalMarginal(PartitionSpec partition, Window window,
                                     std::map<std::uint64_t, std::uint64_t> counts,
                                     std::uint64_t total)
    : partition_(std::move(partition)), window_(window), counts_(std::move(counts)),
      total_(total) {
    check_window(window_);
    if (total_ == 0) {
        throw std::invalid_argument("EmpiricalMarginal: total must be positive");
    }
    const std::uint64_t bins = partition_.total_bins();
    std::uint64_t sum = 0;
    for (const auto& [bin, count] : counts_) {
        if (bin >= bins) {
            throw std::invalid_argument("EmpiricalMarginal: bin index out of range");
        }
        if (count == 0) {
            throw std::invalid_argument("EmpiricalMarginal: occupied bins must have positive counts");
        }
        sum += count;
    }
    if (sum != total_) {
        throw consistency_error("EmpiricalMarginal: counts sum to " + std::to_string(sum) +
                                ", expected " + std::to_string(total_));
    }
}

double EmpiricalMarginal::prob(std::uint64_t bin) const {
    const auto it = counts_.find(bin);
    return it == counts_.end() ? 0.0 : double(it->second) / double(total_);
}

std::map<std::uint64_t, double> EmpiricalMarginal::probs() const {
    std::map<std::uint64_t, double> out;
    for (const auto& [bin, count] : counts_) {
        out.emplace(bin, double(count) / double(total_));
    }
    return out;
}

EmpiricalJoint::EmpiricalJoint(PartitionSpec partition, Window window,
                               std::map<Key, std::uint64_t> counts, std::uint64_t total)
    : partition_(std::move(partition)), window_(window), counts_(std::move(counts)),
      total_(total) {
    check_window(window_);
    if (total_ == 0) {
        throw std::invalid_argument("EmpiricalJoint: total must be positive");
    }
    const std::uint64_t bins = partition_.total_bins();
    std::uint64_t sum = 0;
    for (const auto& [key, count] : counts_) {
        if (key.first >= bins || key.second >= bins) {
            throw std::invalid_argument("EmpiricalJoint: bin index out of range");
        }
        if (count == 0) {
            throw std::invalid_argument("EmpiricalJoint: occupied pairs must have positive counts");
        }
        sum += count;
    }
    if (sum != total_) {
        throw consistency_error("EmpiricalJoint: counts sum to " + std::to_string(sum) +
                                ", expected " + std::to_string(total_));
    }
}

double EmpiricalJoint::prob(Key key) const {
    const auto it = counts_.find(key);
    return it == counts_.end() ? 0.0 : double(it->second) / double(total_);
}

std::map<EmpiricalJoint::Key, double> EmpiricalJoint::probs() const {
    std::map<Key, double> out;
    for (const auto& [key, count] : counts_) {
        out.emplace(key, double(count) / double(total_));
    }
    return out;
}

std::map<std::uint64_t, std::uint64_t> EmpiricalJoint::row_counts() const {
    std::map<std::uint64_t, std::uint64_t> rows;
    for (const auto& [key, count] : counts_) {
        rows[key.first] += count;
    }
    return rows;
}

std::map<std::uint64_t, std::uint64_t> EmpiricalJoint::column_counts() const {
    std::map<std::uint64_t, std::uint64_t> cols;
    for (const auto& [key, count] : counts_) {
        cols[key.second] += count;
    }
    return cols;
}

EmpiricalMarginal EmpiricalJoint::row_marginal() const {
    return EmpiricalMarginal(partition_, window_, row_counts(), total_);
}

TransitionChannel::Row TransitionChannel::apply(const Row& p) const {
    Row out;
    for (const auto& [bin, weight] : p) {
        const auto it = rows_.find(bin);
        if (it == rows_.end()) {
            throw consistency_error("TransitionChannel: no row for occupied bin " +
                                    std::to_string(bin));
        }
        for (const auto& [successor, prob] : it->second) {
            out[successor] += weight * prob;
        }
    }
    return out;
}

double TransitionChannel::row_entropy(std::uint64_t bin) const {
    const auto it = rows_.find(bin);
    if (it == rows_.end()) {
        throw std::out_of_range("TransitionChannel: no row for bin " + std::to_string(bin));
    }
    double h = 0.0;
    for (const auto& [successor, prob] : it->second) {
        h -= prob * std::log(prob);
    }
    return h;
}

EmpiricalMarginal empirical_marginal(const Orbit& orbit, std::size_t skip, std::size_t m,
                                     const PartitionSpec& partition) {
    if (m < 1) {
        throw std::invalid_argument("empirical_marginal: m must be at least 1");
    }
    if (orbit.size() < skip + m + 1) {
        throw std::length_error("empirical_marginal: orbit too short, need " +
                                std::to_string(skip + m + 1) + " elements, have " +
                                std::to_string(orbit.size()));
    }
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::size_t k = skip; k <= skip + m; ++k) {
        ++counts[bin_index(orbit.point(k), partition)];
    }
    return EmpiricalMarginal(partition, Window{skip, m}, std::move(counts), m + 1);
}

EmpiricalJoint empirical_joint(const Orbit& orbit, std::size_t skip, std::size_t m,
                               const PartitionSpec& partition) {
    if (m < 1) {
        throw std::invalid_argument("empirical_joint: m must be at least 1");
    }
    if (orbit.size() < skip + m + 2) {
        throw std::length_error("empirical_joint: orbit too short, need " +
                                std::to_string(skip + m + 2) + " elements, have " +
                                std::to_string(orbit.size()));
    }
    std::map<EmpiricalJoint::Key, std::uint64_t> counts;
    std::uint64_t previous = bin_index(orbit.point(skip), partition);
    for (std::size_t k = skip; k <= skip + m; ++k) {
        const std::uint64_t next = bin_index(orbit.point(k + 1), partition);
        ++counts[{previous, next}];
        previous = next;
    }
    return EmpiricalJoint(partition, Window{skip, m}, std::move(counts), m + 1);
}

TransitionChannel channel_from(const EmpiricalJoint& joint, const EmpiricalMarginal& marginal) {
    if (joint.window() != marginal.window() || joint.partition() != marginal.partition() ||
        joint.total() != marginal.total()) {
        throw consistency_error("channel_from: joint and marginal describe different windows");
    }
    std::map<std::uint64_t, TransitionChannel::Row> rows;
    for (const auto& [key, count] : joint.counts()) {
        const auto it = marginal.counts().find(key.first);
        if (it == marginal.counts().end()) {
            throw consistency_error("channel_from: marginal is zero on occupied joint row " +
                                    std::to_string(key.first));
        }
        rows[key.first][key.second] = double(count) / double(it->second);
    }
    return TransitionChannel(std::move(rows));
}

} // namespace ecd
