#include "ecd/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ecd/classical_maps.hpp"
#include "ecd/errors.hpp"

namespace ecd::spin {

double dot(const Vec3& u, const Vec3& v) noexcept {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

Vec3 cross(const Vec3& u, const Vec3& v) noexcept {
    return {u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

double norm(const Vec3& v) noexcept {
    return std::sqrt(dot(v, v));
}

UnitVector3::UnitVector3(const Vec3& v) : e_(v) {
    const double n = norm(v);
    if (!(std::abs(n - 1.0) <= 1e-9)) {
        throw std::invalid_argument("UnitVector3: |v| = " + std::to_string(n) +
                                    " is not 1 within 1e-9");
    }
}

UnitVector3 UnitVector3::normalized(const Vec3& v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("UnitVector3::normalized: vector has no direction");
    }
    return UnitVector3(Vec3{v[0] / n, v[1] / n, v[2] / n});
}

SpinState::SpinState(const Vec3& bloch) : bloch_(bloch) {
    const double n = norm(bloch);
    if (!(n <= 1.0 + 1e-12)) {
        throw std::invalid_argument("SpinState: Bloch vector norm " + std::to_string(n) +
                                    " exceeds 1");
    }
}

UnitVector3 default_initial_direction() {
    const double c = 1.0 / std::sqrt(3.0);
    return UnitVector3(Vec3{c, c, c});
}

namespace {

void require_finite_angle(double theta, const char* who) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument(std::string(who) + ": angle must be finite");
    }
}

inline Vec3 example1_update(const Vec3& e, double cos_t, double sin_t) noexcept {
    return {(1.0 - cos_t) * e[2] * e[0] - sin_t * e[1],
            (1.0 - cos_t) * e[2] * e[1] + sin_t * e[0],
            cos_t + (1.0 - cos_t) * e[2] * e[2]};
}

inline Vec3 example2_update(const Vec3& e, double cos_t, double sin_t) noexcept {
    const double a = 2.0 * (1.0 - cos_t);
    const double radial = -1.0 + 2.0 * (1.0 - cos_t) * e[2] * e[2];
    return {radial * e[0] - 2.0 * sin_t * e[2] * e[1],
            radial * e[1] - 2.0 * sin_t * e[2] * e[0],
            (1.0 - a) * e[2] + a * e[2] * e[2]};
}

inline Vec3 rotation_formula(double cos_wt, double sin_wt, const Vec3& axis,
                             const Vec3& a) noexcept {
    const double along = dot(axis, a);
    const Vec3 axial{axis[0] * along, axis[1] * along, axis[2] * along};
    const Vec3 turned = cross(axis, a);
    return {(a[0] - axial[0]) * cos_wt + axial[0] - turned[0] * sin_wt,
            (a[1] - axial[1]) * cos_wt + axial[1] - turned[1] * sin_wt,
            (a[2] - axial[2]) * cos_wt + axial[2] - turned[2] * sin_wt};
}

} // namespace

UnitVector3 example1_step(const UnitVector3& e, double theta) {
    require_finite_angle(theta, "example1_step");
    // the update preserves the unit sphere analytically; the constructor
    // re-checks the norm rather than renormalizing
    return UnitVector3(example1_update(e.components(), std::cos(theta), std::sin(theta)));
}

Vec3 example2_step(const Vec3& e, double theta) {
    require_finite_angle(theta, "example2_step");
    if (!std::isfinite(e[0]) || !std::isfinite(e[1]) || !std::isfinite(e[2])) {
        throw std::invalid_argument("example2_step: input must be finite");
    }
    return example2_update(e, std::cos(theta), std::sin(theta));
}

double example2_coupling(double theta) noexcept {
    return 2.0 * (1.0 - std::cos(theta));
}

Vec3 rotation_apply(double omega_tau, const UnitVector3& axis, const Vec3& a) {
    require_finite_angle(omega_tau, "rotation_apply");
    return rotation_formula(std::cos(omega_tau), std::sin(omega_tau), axis.components(), a);
}

double observable_value(const SpinState& rho, const SpinObservable& a,
                        const UnitVector3& e, double omega_tau) {
    return dot(rho.bloch(), rotation_apply(omega_tau, e, a.a));
}

namespace {

template <typename Emit>
void iterate_field(const SpinDynamicsConfig& config, std::size_t length, Emit&& emit) {
    const double cos_t = std::cos(config.theta);
    const double sin_t = std::sin(config.theta);
    const double guard_sq = maps::divergence_guard * maps::divergence_guard;
    Vec3 e = config.e0.components();
    for (std::size_t k = 0; k < length; ++k) {
        // the second recurrence does not preserve the sphere and escapes for
        // strong couplings; an unbounded field would poison the interval
        if (!(dot(e, e) <= guard_sq)) {
            throw divergence_error(k, "field recurrence divergent at step " +
                                          std::to_string(k));
        }
        emit(e);
        e = config.example == SpinExample::example1 ? example1_update(e, cos_t, sin_t)
                                                    : example2_update(e, cos_t, sin_t);
    }
}

} // namespace

Orbit spin_orbit(const SpinDynamicsConfig& config, std::size_t length) {
    if (length < 1) {
        throw std::invalid_argument("spin_orbit: length must be at least 1");
    }
    require_finite_angle(config.theta, "spin_orbit");
    require_finite_angle(config.omega_tau, "spin_orbit");

    const double cos_wt = std::cos(config.omega_tau);
    const double sin_wt = std::sin(config.omega_tau);
    const bool reduced = config.observable_mode == ObservableMode::reduced;

    std::vector<double> xs;
    xs.reserve(length);
    iterate_field(config, length, [&](const Vec3& e) {
        xs.push_back(reduced
                         ? e[2] * e[2]
                         : dot(config.rho.bloch(), rotation_formula(cos_wt, sin_wt, e, config.a.a)));
    });
    return Orbit(std::move(xs));
}

std::vector<Vec3> field_orbit(const SpinDynamicsConfig& config, std::size_t length) {
    if (length < 1) {
        throw std::invalid_argument("field_orbit: length must be at least 1");
    }
    require_finite_angle(config.theta, "field_orbit");
    std::vector<Vec3> es;
    es.reserve(length);
    iterate_field(config, length, [&](const Vec3& e) { es.push_back(e); });
    return es;
}

EcdReport spin_ecd(const SpinDynamicsConfig& config, std::size_t skip, std::size_t m,
                   std::uint32_t bins_per_axis) {
    const Orbit orbit = spin_orbit(config, skip + m + 2);
    return ecd_of_sequence(orbit, skip, m, bins_per_axis);
}

std::vector<double> logistic_equivalence(std::span<const double> e3_orbit, double theta) {
    require_finite_angle(theta, "logistic_equivalence");
    if (e3_orbit.size() < 2) {
        throw std::invalid_argument("logistic_equivalence: need at least two elements");
    }
    const double sin_half = std::sin(0.5 * theta);
    const double mu = 4.0 * sin_half * sin_half;

    std::vector<double> z(e3_orbit.size());
    for (std::size_t k = 0; k < e3_orbit.size(); ++k) {
        z[k] = 0.5 * (1.0 - e3_orbit[k]);
    }
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
        const double predicted = maps::logistic_step(z[k], mu);
        if (!(std::abs(z[k + 1] - predicted) <= logistic_equivalence_tolerance)) {
            throw equivalence_error(k, "logistic_equivalence: residual " +
                                           std::to_string(z[k + 1] - predicted) +
                                           " at step " + std::to_string(k));
        }
    }
    return z;
}

} // namespace ecd::spin
