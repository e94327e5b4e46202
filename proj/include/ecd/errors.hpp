#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecd {

// An orbit left the admissible region (non-finite point or norm above the
// divergence guard). Carries the index of the offending step.
class divergence_error : public std::runtime_error {
public:
    divergence_error(std::size_t step, const std::string& what_arg)
        : std::runtime_error(what_arg), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// A claimed per-step identity between two orbits failed. Carries the index
// of the first step whose residual exceeded the tolerance.
class equivalence_error : public std::runtime_error {
public:
    equivalence_error(std::size_t step, const std::string& what_arg)
        : std::runtime_error(what_arg), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// A joint/marginal pair does not describe the same window of the same orbit.
class consistency_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ecd
