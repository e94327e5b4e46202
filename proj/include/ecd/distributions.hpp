#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "ecd/partition.hpp"

namespace ecd {

// Aggregation window of an orbit: skip transient iterates, then use m+1
// samples (m is the window length minus one).
struct Window {
    std::size_t skip = 0;
    std::size_t m = 1;

    std::size_t samples() const noexcept { return m + 1; }

    bool operator==(const Window&) const = default;
};

// Time-n occupation distribution over partition bins. Counts are kept as
// integers and probabilities derived on demand, so row marginals of a joint
// built from the same window match bit for bit. Only occupied bins are
// stored; absent bins have probability zero.
class EmpiricalMarginal {
public:
    EmpiricalMarginal(PartitionSpec partition, Window window,
                      std::map<std::uint64_t, std::uint64_t> counts,
                      std::uint64_t total);

    const PartitionSpec& partition() const noexcept { return partition_; }
    const Window& window() const noexcept { return window_; }
    const std::map<std::uint64_t, std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept { return total_; }
    std::size_t occupied() const noexcept { return counts_.size(); }

    double prob(std::uint64_t bin) const;
    std::map<std::uint64_t, double> probs() const;

private:
    PartitionSpec partition_;
    Window window_;
    std::map<std::uint64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Joint occupation distribution of consecutive bin pairs (time n, time n+1)
// over the same window.
class EmpiricalJoint {
public:
    using Key = std::pair<std::uint64_t, std::uint64_t>;

    EmpiricalJoint(PartitionSpec partition, Window window,
                   std::map<Key, std::uint64_t> counts, std::uint64_t total);

    const PartitionSpec& partition() const noexcept { return partition_; }
    const Window& window() const noexcept { return window_; }
    const std::map<Key, std::uint64_t>& counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept { return total_; }

    double prob(Key key) const;
    std::map<Key, double> probs() const;

    // Integer row/column sums; the row marginal equals the EmpiricalMarginal
    // of the same window exactly (same summands).
    std::map<std::uint64_t, std::uint64_t> row_counts() const;
    std::map<std::uint64_t, std::uint64_t> column_counts() const;
    EmpiricalMarginal row_marginal() const;

private:
    PartitionSpec partition_;
    Window window_;
    std::map<Key, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// Row-stochastic transition matrix over occupied bins: row i holds the
// conditional successor distribution p_ij / p_i.
class TransitionChannel {
public:
    using Row = std::map<std::uint64_t, double>;

    explicit TransitionChannel(std::map<std::uint64_t, Row> rows)
        : rows_(std::move(rows)) {}

    const std::map<std::uint64_t, Row>& rows() const noexcept { return rows_; }

    // Push a distribution forward: q_j = sum_i p_i * row_i[j].
    Row apply(const Row& p) const;

    // Shannon entropy (nats) of row bin's successor distribution.
    double row_entropy(std::uint64_t bin) const;

private:
    std::map<std::uint64_t, Row> rows_;
};

// p_i = (1/(m+1)) sum_{k=skip}^{skip+m} 1_{B_i}(orbit[k]).
EmpiricalMarginal empirical_marginal(const Orbit& orbit, std::size_t skip,
                                     std::size_t m, const PartitionSpec& partition);

// p_ij = (1/(m+1)) sum_{k=skip}^{skip+m} 1_{B_i}(orbit[k]) 1_{B_j}(orbit[k+1]).
EmpiricalJoint empirical_joint(const Orbit& orbit, std::size_t skip,
                               std::size_t m, const PartitionSpec& partition);

// Row i of the channel is the joint row divided by the marginal weight of i.
// Throws consistency_error when the pair does not match.
TransitionChannel channel_from(const EmpiricalJoint& joint,
                               const EmpiricalMarginal& marginal);

} // namespace ecd
