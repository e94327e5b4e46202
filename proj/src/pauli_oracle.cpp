#include "ecd/pauli_oracle.hpp"

#include <cmath>

namespace ecd::spin {

Matrix2c pauli_dot(const Vec3& v) {
    using namespace std::complex_literals;
    return {std::complex<double>(v[2], 0.0), std::complex<double>(v[0], -v[1]),
            std::complex<double>(v[0], v[1]), std::complex<double>(-v[2], 0.0)};
}

Matrix2c density_matrix(const Vec3& bloch) {
    return std::complex<double>(0.5, 0.0) * (Matrix2c::identity() + pauli_dot(bloch));
}

Matrix2c rotation_unitary(double omega_tau, const Vec3& axis) {
    const double half = 0.5 * omega_tau;
    const std::complex<double> c(std::cos(half), 0.0);
    const std::complex<double> minus_i_s(0.0, -std::sin(half));
    return c * Matrix2c::identity() + minus_i_s * pauli_dot(axis);
}

Matrix2c conjugate(const Matrix2c& u, const Matrix2c& rho) {
    return u * rho * u.adjoint();
}

double expectation(const Matrix2c& obs, const Matrix2c& rho) {
    return (obs * rho).trace().real();
}

double oracle_observable_value(const SpinState& rho, const SpinObservable& a,
                               const UnitVector3& e, double omega_tau) {
    const Matrix2c v = rotation_unitary(omega_tau, e.components());
    return expectation(pauli_dot(a.a), conjugate(v, density_matrix(rho.bloch())));
}

} // namespace ecd::spin
