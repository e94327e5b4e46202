#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "ecd/chaos_degree.hpp"
#include "ecd/orbit.hpp"

namespace ecd::spin {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& u, const Vec3& v) noexcept;
Vec3 cross(const Vec3& u, const Vec3& v) noexcept;
double norm(const Vec3& v) noexcept;

// Direction of the driving field; the constructor requires |v| = 1 within
// 1e-9. Use normalized() to build one from an arbitrary nonzero vector.
class UnitVector3 {
public:
    explicit UnitVector3(const Vec3& v);

    static UnitVector3 normalized(const Vec3& v);

    const Vec3& components() const noexcept { return e_; }
    double operator[](std::size_t i) const noexcept { return e_[i]; }

private:
    Vec3 e_;
};

// Observable in the two-level system, X = a . sigma.
struct SpinObservable {
    Vec3 a{0.0, 0.0, 1.0};
};

// State as a Bloch vector, rho = (I + sigma . r)/2 with |r| <= 1.
class SpinState {
public:
    explicit SpinState(const Vec3& bloch);

    const Vec3& bloch() const noexcept { return bloch_; }

private:
    Vec3 bloch_;
};

enum class SpinExample { example1, example2 };

// What the orbit records per step: the full expectation value
// (rho, R(omega tau, e_n) a) or the reduced sequence (e_n^(3))^2.
enum class ObservableMode { full, reduced };

inline constexpr double default_omega_tau = std::numbers::pi / 4.0;

// (1, 1, 1) / sqrt(3).
UnitVector3 default_initial_direction();

struct SpinDynamicsConfig {
    SpinExample example = SpinExample::example1;
    double theta = 0.0;
    double omega_tau = default_omega_tau;
    UnitVector3 e0 = default_initial_direction();
    SpinObservable a{};
    SpinState rho{Vec3{0.0, 0.0, 1.0}};
    ObservableMode observable_mode = ObservableMode::reduced;
};

// One field-direction update of the first recurrence:
//   e1' = (1 - cos t) e3 e1 - (sin t) e2
//   e2' = (1 - cos t) e3 e2 + (sin t) e1
//   e3' = cos t + (1 - cos t) e3^2
// The map preserves the unit sphere; no renormalization is applied.
UnitVector3 example1_step(const UnitVector3& e, double theta);

// One update of the second recurrence (not sphere-preserving, so plain
// vectors go in and out):
//   e1' = [-1 + 2(1 - cos t) e3^2] e1 - 2 (sin t) e3 e2
//   e2' = [-1 + 2(1 - cos t) e3^2] e2 - 2 (sin t) e3 e1
//   e3' = (1 - a) e3 + a e3^2,  a = 2(1 - cos t)
Vec3 example2_step(const Vec3& e, double theta);

// a = 2(1 - cos theta), the effective coupling of the second recurrence.
double example2_coupling(double theta) noexcept;

// R(wt, e) a = [a - e(e.a)] cos wt + e(e.a) - (e x a) sin wt.
Vec3 rotation_apply(double omega_tau, const UnitVector3& axis, const Vec3& a);

// x = (rho, R(omega tau, e) a); for a = rho = (0,0,1) this reduces to
// cos wt + e3^2 (1 - cos wt).
double observable_value(const SpinState& rho, const SpinObservable& a,
                        const UnitVector3& e, double omega_tau);

// Scalar observable sequence along the configured recurrence; element 0 is
// the value at e0.
Orbit spin_orbit(const SpinDynamicsConfig& config, std::size_t length);

// The driving field directions themselves, e_0, e_1, ...
std::vector<Vec3> field_orbit(const SpinDynamicsConfig& config, std::size_t length);

// Orbit -> empirical pair -> chaos degree with the interval spanned by the
// window.
EcdReport spin_ecd(const SpinDynamicsConfig& config, std::size_t skip, std::size_t m,
                   std::uint32_t bins_per_axis);

// Maps a first-recurrence e3 sequence to z_n = (1 - e3_n)/2 and verifies
// z_{n+1} = mu z_n (1 - z_n) with mu = 4 sin^2(theta/2) at every step within
// 1e-12; returns the z orbit. A violation raises equivalence_error carrying
// the failing step.
std::vector<double> logistic_equivalence(std::span<const double> e3_orbit, double theta);

inline constexpr double logistic_equivalence_tolerance = 1e-12;

} // namespace ecd::spin
