#pragma once

#include "sqz/core.hpp"

namespace sqz {

/// Largest |rho_{-+} - conj(rho_{+-})| or imaginary population part.
double hermiticity_defect(const DensityMatrix& rho);

/// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const DensityMatrix& rho);

/// Half the sum of absolute eigenvalues of the Hermitian part of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// <sx> = rho_{+-} + rho_{-+}, <sy> = i (rho_{+-} - rho_{-+}), <sz> = rho_{++} - rho_{--}.
/// Real parts are returned; the imaginary parts vanish for Hermitian input.
Expectations pauli_expectations(const DensityMatrix& rho);

/// Zero mode of the rate operator: diag(N/(2N+1), (N+1)/(2N+1)).
DensityMatrix thermal_like_steady_state(double n_param);

/// rho = |psi><psi| with psi = mu|+1> + nu|-1>.
DensityMatrix pure_state(Complex mu, Complex nu);

} // namespace sqz
