#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecd/orbit.hpp"

namespace ecd {

// Axis-aligned equipartition of a box in R^L: bins_per_axis half-open bins
// per axis, with the last bin closed so values equal to the upper edge stay
// in range. Multi-axis bins are flattened row-major (last axis fastest).
struct PartitionSpec {
    std::vector<double> lo;
    std::vector<double> hi;
    std::uint32_t bins_per_axis = 1;

    std::size_t dims() const noexcept { return lo.size(); }

    // bins_per_axis^dims; throws std::overflow_error if it does not fit.
    std::uint64_t total_bins() const;

    bool operator==(const PartitionSpec&) const = default;

    // Validated construction over explicit per-axis bounds.
    static PartitionSpec over(std::vector<double> lo, std::vector<double> hi,
                              std::uint32_t bins_per_axis);

    // Bounds taken as the per-axis min/max of orbit elements first..last
    // (inclusive). A constant axis yields lo == hi; every value on such an
    // axis falls into coordinate 0.
    static PartitionSpec spanning(const Orbit& orbit, std::size_t first,
                                  std::size_t last, std::uint32_t bins_per_axis);
};

// Flattened bin index of x. Requires lo[d] <= x[d] <= hi[d] on every axis;
// violations raise std::out_of_range naming the axis.
std::uint64_t bin_index(std::span<const double> x, const PartitionSpec& partition);

} // namespace ecd
