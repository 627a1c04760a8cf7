#include "sqz/density.hpp"

#include <algorithm>
#include <cmath>

namespace sqz {

namespace {

// Eigenvalues of the Hermitian part of a 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Eigen::Matrix2cd& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

} // namespace

double hermiticity_defect(const DensityMatrix& rho) {
    return std::max({std::abs(rho(1, 0) - std::conj(rho(0, 1))), std::abs(rho(0, 0).imag()),
                     std::abs(rho(1, 1).imag())});
}

double min_eigenvalue(const DensityMatrix& rho) { return hermitian_eigenvalues(rho)[0]; }

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const auto ev = hermitian_eigenvalues(a - b);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

Expectations pauli_expectations(const DensityMatrix& rho) {
    const Complex up_down = rho(0, 1);
    const Complex down_up = rho(1, 0);
    const Complex i{0.0, 1.0};
    return {(up_down + down_up).real(), (i * (up_down - down_up)).real(), (rho(0, 0) - rho(1, 1)).real()};
}

DensityMatrix thermal_like_steady_state(double n_param) {
    DensityMatrix rho = DensityMatrix::Zero();
    const double denom = 2.0 * n_param + 1.0;
    rho(0, 0) = n_param / denom;
    rho(1, 1) = (n_param + 1.0) / denom;
    return rho;
}

DensityMatrix pure_state(Complex mu, Complex nu) {
    const Eigen::Vector2cd psi(mu, nu);
    return psi * psi.adjoint();
}

} // namespace sqz
