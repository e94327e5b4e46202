#pragma once

#include <array>
#include <functional>
#include <vector>

#include "ecd/orbit.hpp"

namespace ecd::maps {

enum class MapFamily { logistic, baker, tinkerbell };

// A difference-equation orbit source.
//   logistic:   params = {mu},         x0 = {x}   with mu in [0,4], x in [0,1]
//   baker:      params = {},           x0 = {x,y} in the unit square
//   tinkerbell: params = {a, b, c, d}, x0 = {x,y}
struct MapSpec {
    MapFamily family = MapFamily::logistic;
    std::vector<double> params;
    std::vector<double> x0;
};

// Conventional chaotic parameter set for the Tinkerbell map.
inline constexpr std::array<double, 4> tinkerbell_default_params{0.9, -0.6013, 2.0, 0.5};

// Tinkerbell orbits whose norm exceeds this are flagged divergent.
inline constexpr double divergence_guard = 1e6;

// x -> mu * x * (1 - x); stays in [0,1] for the admissible domain.
double logistic_step(double x, double mu);

// (x, y) -> (2x, y/2) on the left half, (2x - 1, (y+1)/2) on the right.
std::array<double, 2> baker_step(std::array<double, 2> p);

// (x, y) -> (x^2 - y^2 + a x + b y, 2 x y + c x + d y).
std::array<double, 2> tinkerbell_step(std::array<double, 2> p, double a, double b,
                                      double c, double d);

// Iterates the family's step; element 0 is x0. Step failures propagate with
// the failing index (divergence_error for the Tinkerbell guard).
Orbit orbit(const MapSpec& spec, std::size_t length);

// Same iteration driven by a user-supplied step function.
Orbit iterate_map(std::vector<double> x0,
                  const std::function<std::vector<double>(const std::vector<double>&)>& step,
                  std::size_t length);

} // namespace ecd::maps
