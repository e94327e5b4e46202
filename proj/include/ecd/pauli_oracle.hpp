#pragma once

#include <complex>

#include "ecd/spin.hpp"

namespace ecd::spin {

// Minimal 2x2 complex matrix algebra. This is the independent route for
// expectation values: build the operators, conjugate the state with the
// one-step unitary, take the trace. The closed-form rotation in spin.hpp is
// validated against it.
struct Matrix2c {
    std::complex<double> m00{}, m01{}, m10{}, m11{};

    static Matrix2c identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Matrix2c adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }

    std::complex<double> trace() const { return m00 + m11; }

    friend Matrix2c operator+(const Matrix2c& a, const Matrix2c& b) {
        return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
    }

    friend Matrix2c operator*(const Matrix2c& a, const Matrix2c& b) {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }

    friend Matrix2c operator*(std::complex<double> s, const Matrix2c& a) {
        return {s * a.m00, s * a.m01, s * a.m10, s * a.m11};
    }
};

// v . sigma for the standard Pauli matrices.
Matrix2c pauli_dot(const Vec3& v);

// rho = (I + sigma . bloch) / 2.
Matrix2c density_matrix(const Vec3& bloch);

// V = cos(wt/2) I - i sin(wt/2) (axis . sigma).
Matrix2c rotation_unitary(double omega_tau, const Vec3& axis);

// U rho U+.
Matrix2c conjugate(const Matrix2c& u, const Matrix2c& rho);

// Re tr(obs rho).
double expectation(const Matrix2c& obs, const Matrix2c& rho);

// Re tr[(a . sigma) V rho V+] with V = rotation_unitary(omega_tau, e).
double oracle_observable_value(const SpinState& rho, const SpinObservable& a,
                               const UnitVector3& e, double omega_tau);

} // namespace ecd::spin
