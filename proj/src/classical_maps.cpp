#include "ecd/classical_maps.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ecd/errors.hpp"

namespace ecd::maps {

double logistic_step(double x, double mu) {
    if (!(mu >= 0.0 && mu <= 4.0)) {
        throw std::out_of_range("logistic_step: mu = " + std::to_string(mu) +
                                " outside [0, 4]");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::out_of_range("logistic_step: x = " + std::to_string(x) +
                                " outside [0, 1]");
    }
    return mu * x * (1.0 - x);
}

std::array<double, 2> baker_step(std::array<double, 2> p) {
    for (std::size_t d = 0; d < 2; ++d) {
        if (!(p[d] >= 0.0 && p[d] <= 1.0)) {
            throw std::out_of_range("baker_step: coordinate " + std::to_string(p[d]) +
                                    " outside [0, 1] on axis " + std::to_string(d));
        }
    }
    if (p[0] < 0.5) {
        return {2.0 * p[0], 0.5 * p[1]};
    }
    return {2.0 * p[0] - 1.0, 0.5 * (p[1] + 1.0)};
}

std::array<double, 2> tinkerbell_step(std::array<double, 2> p, double a, double b,
                                      double c, double d) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(a) ||
        !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
        throw std::invalid_argument("tinkerbell_step: inputs must be finite");
    }
    return {p[0] * p[0] - p[1] * p[1] + a * p[0] + b * p[1],
            2.0 * p[0] * p[1] + c * p[0] + d * p[1]};
}

namespace {

Orbit logistic_orbit(const MapSpec& spec, std::size_t length) {
    if (spec.params.size() != 1) {
        throw std::invalid_argument("orbit: logistic expects exactly one parameter (mu)");
    }
    if (spec.x0.size() != 1) {
        throw std::invalid_argument("orbit: logistic expects a one-dimensional x0");
    }
    const double mu = spec.params[0];
    std::vector<double> xs(length);
    double x = spec.x0[0];
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::out_of_range("orbit: logistic x0 = " + std::to_string(x) +
                                " outside [0, 1]");
    }
    xs[0] = x;
    for (std::size_t k = 1; k < length; ++k) {
        x = logistic_step(x, mu);
        xs[k] = x;
    }
    return Orbit(std::move(xs));
}

Orbit baker_orbit(const MapSpec& spec, std::size_t length) {
    if (!spec.params.empty()) {
        throw std::invalid_argument("orbit: baker takes no parameters");
    }
    if (spec.x0.size() != 2) {
        throw std::invalid_argument("orbit: baker expects a two-dimensional x0");
    }
    std::array<double, 2> p{spec.x0[0], spec.x0[1]};
    for (std::size_t d = 0; d < 2; ++d) {
        if (!(p[d] >= 0.0 && p[d] <= 1.0)) {
            throw std::out_of_range("orbit: baker x0 outside the unit square on axis " +
                                    std::to_string(d));
        }
    }
    std::vector<double> flat;
    flat.reserve(2 * length);
    flat.insert(flat.end(), {p[0], p[1]});
    for (std::size_t k = 1; k < length; ++k) {
        p = baker_step(p);
        flat.insert(flat.end(), {p[0], p[1]});
    }
    return Orbit(2, std::move(flat));
}

Orbit tinkerbell_orbit(const MapSpec& spec, std::size_t length) {
    if (spec.params.size() != 4) {
        throw std::invalid_argument("orbit: tinkerbell expects four parameters (a, b, c, d)");
    }
    if (spec.x0.size() != 2) {
        throw std::invalid_argument("orbit: tinkerbell expects a two-dimensional x0");
    }
    const double a = spec.params[0], b = spec.params[1];
    const double c = spec.params[2], d = spec.params[3];
    std::array<double, 2> p{spec.x0[0], spec.x0[1]};
    if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
        throw std::invalid_argument("orbit: tinkerbell x0 must be finite");
    }
    std::vector<double> flat;
    flat.reserve(2 * length);
    flat.insert(flat.end(), {p[0], p[1]});
    for (std::size_t k = 1; k < length; ++k) {
        p = tinkerbell_step(p, a, b, c, d);
        const double r = std::hypot(p[0], p[1]);
        if (!std::isfinite(r) || r > divergence_guard) {
            throw divergence_error(k, "orbit: tinkerbell orbit divergent at step " +
                                          std::to_string(k) + " (|p| = " + std::to_string(r) +
                                          ")");
        }
        flat.insert(flat.end(), {p[0], p[1]});
    }
    return Orbit(2, std::move(flat));
}

} // namespace

Orbit orbit(const MapSpec& spec, std::size_t length) {
    if (length < 1) {
        throw std::invalid_argument("orbit: length must be at least 1");
    }
    switch (spec.family) {
    case MapFamily::logistic:
        return logistic_orbit(spec, length);
    case MapFamily::baker:
        return baker_orbit(spec, length);
    case MapFamily::tinkerbell:
        return tinkerbell_orbit(spec, length);
    }
    throw std::invalid_argument("orbit: unknown map family");
}

Orbit iterate_map(std::vector<double> x0,
                  const std::function<std::vector<double>(const std::vector<double>&)>& step,
                  std::size_t length) {
    if (length < 1) {
        throw std::invalid_argument("iterate_map: length must be at least 1");
    }
    if (x0.empty()) {
        throw std::invalid_argument("iterate_map: x0 must be non-empty");
    }
    const std::size_t dims = x0.size();
    std::vector<double> flat;
    flat.reserve(dims * length);
    std::vector<double> p = std::move(x0);
    flat.insert(flat.end(), p.begin(), p.end());
    for (std::size_t k = 1; k < length; ++k) {
        p = step(p);
        if (p.size() != dims) {
            throw std::invalid_argument("iterate_map: step changed the dimension at step " +
                                        std::to_string(k));
        }
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return Orbit(dims, std::move(flat));
}

} // namespace ecd::maps
