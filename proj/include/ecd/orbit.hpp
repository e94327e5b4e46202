#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ecd {

// A finite sequence of points in R^L, stored flat with one row per time step.
// dims() is fixed at construction; scalar sequences use dims() == 1.
class Orbit {
public:
    Orbit() = default;

    explicit Orbit(std::vector<double> scalars)
        : dims_(1), flat_(std::move(scalars)) {}

    Orbit(std::size_t dims, std::vector<double> flat)
        : dims_(dims), flat_(std::move(flat)) {
        if (dims_ == 0) {
            throw std::invalid_argument("Orbit: dims must be positive");
        }
        if (flat_.size() % dims_ != 0) {
            throw std::invalid_argument("Orbit: flat storage size is not a multiple of dims");
        }
    }

    std::size_t dims() const noexcept { return dims_; }

    std::size_t size() const noexcept { return flat_.size() / dims_; }

    std::span<const double> point(std::size_t i) const {
        return {flat_.data() + i * dims_, dims_};
    }

    double scalar(std::size_t i) const {
        if (dims_ != 1) {
            throw std::logic_error("Orbit::scalar requires dims() == 1");
        }
        return flat_[i];
    }

    void append(std::span<const double> p) {
        if (p.size() != dims_) {
            throw std::invalid_argument("Orbit::append: point dimension mismatch");
        }
        flat_.insert(flat_.end(), p.begin(), p.end());
    }

    const std::vector<double>& flat() const noexcept { return flat_; }

private:
    std::size_t dims_ = 1;
    std::vector<double> flat_;
};

} // namespace ecd
