#include "ecd/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ecd {

std::uint64_t PartitionSpec::total_bins() const {
    std::uint64_t total = 1;
    const std::uint64_t m = bins_per_axis;
    for (std::size_t d = 0; d < dims(); ++d) {
        if (m != 0 && total > std::numeric_limits<std::uint64_t>::max() / m) {
            throw std::overflow_error("PartitionSpec: total bin count does not fit 64 bits");
        }
        total *= m;
    }
    return total;
}

PartitionSpec PartitionSpec::over(std::vector<double> lo, std::vector<double> hi,
                                  std::uint32_t bins_per_axis) {
    if (lo.empty() || lo.size() != hi.size()) {
        throw std::invalid_argument("PartitionSpec: lo/hi must be non-empty and equal-sized");
    }
    if (bins_per_axis == 0) {
        throw std::invalid_argument("PartitionSpec: bins_per_axis must be positive");
    }
    for (std::size_t d = 0; d < lo.size(); ++d) {
        if (!(lo[d] <= hi[d])) {
            throw std::invalid_argument("PartitionSpec: lo > hi on axis " + std::to_string(d));
        }
    }
    PartitionSpec spec{std::move(lo), std::move(hi), bins_per_axis};
    spec.total_bins(); // reject unrepresentable bin counts up front
    return spec;
}

PartitionSpec PartitionSpec::spanning(const Orbit& orbit, std::size_t first,
                                      std::size_t last, std::uint32_t bins_per_axis) {
    if (first > last || last >= orbit.size()) {
        throw std::invalid_argument("PartitionSpec::spanning: element range out of bounds");
    }
    const std::size_t dims = orbit.dims();
    std::vector<double> lo(orbit.point(first).begin(), orbit.point(first).end());
    std::vector<double> hi = lo;
    for (std::size_t k = first + 1; k <= last; ++k) {
        const auto p = orbit.point(k);
        for (std::size_t d = 0; d < dims; ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
        }
    }
    return over(std::move(lo), std::move(hi), bins_per_axis);
}

std::uint64_t bin_index(std::span<const double> x, const PartitionSpec& partition) {
    const std::size_t dims = partition.dims();
    if (x.size() != dims) {
        throw std::invalid_argument("bin_index: point dimension mismatch");
    }
    const std::uint64_t m = partition.bins_per_axis;
    std::uint64_t index = 0;
    for (std::size_t d = 0; d < dims; ++d) {
        const double lo = partition.lo[d];
        const double hi = partition.hi[d];
        const double v = x[d];
        if (!(v >= lo && v <= hi)) {
            throw std::out_of_range("bin_index: coordinate " + std::to_string(v) +
                                    " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] on axis " + std::to_string(d));
        }
        const double width = hi - lo;
        std::uint64_t cell = 0;
        if (width > 0.0) {
            cell = static_cast<std::uint64_t>(std::floor(double(m) * (v - lo) / width));
            if (cell >= m) {
                cell = m - 1; // values at (or rounded onto) the upper edge stay in the last bin
            }
        }
        index = index * m + cell;
    }
    return index;
}

} // namespace ecd
