#pragma once

#include <array>
#include <optional>

#include "sqz/bath.hpp"
#include "sqz/density.hpp"

namespace sqz {

/// Which root of (N+1) a+^2 + a+ - N = 0 is used: stable = N/(N+1), unstable = -1.
enum class AlphaRoot { stable, unstable };
/// Sign in e+ = +-e^{i theta}.
enum class EtaSign { plus, minus };

/// Constant parameters (a+, a-, e+, e-) that diagonalize a time-independent rate operator.
struct TransformationBranch {
    Complex alpha_plus{};
    Complex alpha_minus{};
    Complex eta_plus{};
    Complex eta_minus{};
    AlphaRoot alpha_root = AlphaRoot::stable;
    EtaSign eta_sign = EtaSign::minus;
};

/// Builds one branch: a- = -(N+1)/(2(N+1)a+ + 1), e- = -1/(2 e+).
TransformationBranch make_branch(double n_param, double theta, AlphaRoot root, EtaSign sign);

/// The two paired solution sets: {unstable root, e+ = +e^{i theta}} and
/// {stable root, e+ = -e^{i theta}}, in that order. The stable one is the
/// set reached by the time-dependent gauge flow.
std::array<TransformationBranch, 2> solve_transformation_conditions(double n_param, double theta);

/// Residuals of the four conditions
///   (N+1) a+^2 + a+ - N,  (N+1)(1 + 2 a+ a-) + a-,  M e+^2 - M*,  1 + 2 e+ e-.
std::array<double, 4> condition_residuals(double n_param, Complex m_param, const TransformationBranch& branch);

/// (N+1) a+^2 + a+ - N for an arbitrary candidate root.
double alpha_condition_residual(double n_param, double alpha_plus);

/// Eigensolution of the rate operator labelled by the basis element |s><s'| it
/// is generated from. `mode` is the right eigenvector, `dual` the right
/// eigenvector of the adjoint (the left eigenvector of Gamma), normalized so
/// that the Hilbert-Schmidt pairing tr(dual^dagger mode) = 1.
struct EigenMode {
    Complex beta{};
    int s = 1;
    int s_prime = 1;
    DensityMatrix mode = DensityMatrix::Zero();
    DensityMatrix dual = DensityMatrix::Zero();
};

/// beta(s,s') = -gamma {[(N+1) a+ + 1/2](s+s')/2 - M e+ (s-s')/2 + (2N+1)/2},
/// mode = U |s><s'|, dual = (U^{-1})^dagger |s><s'|, where
/// U = exp(a+ J+) exp(a- J-) exp(e+ K+) exp(e- K-). Modes are ordered like the
/// vectorized basis. Throws InvalidInput when the branch does not satisfy the
/// conditions for (N, M).
std::array<EigenMode, 4> eigen_modes(double gamma, double n_param, Complex m_param,
                                     const TransformationBranch& branch);

/// Hilbert-Schmidt pairing tr(a^dagger b).
Complex hs_inner(const DensityMatrix& a, const DensityMatrix& b);

/// Expected long-time values of the gauge flow for a schedule that converges
/// to constant controls.
struct AsymptoticLimits {
    double gamma = 0.0;
    double n_param = 0.0;
    Complex m_param{};
    double alpha_plus = 0.0; // N/(N+1)
    /// -e^{i theta} when |M| > 0 in the limit, 0 under a thermal override, and
    /// nullopt when the squeezing decays away and e+ freezes at a
    /// history-dependent value.
    std::optional<Complex> eta_plus;
    DensityMatrix steady = DensityMatrix::Zero();
};

/// Throws UnsupportedSchedule for schedules without a limit (growing ramps,
/// sinusoids, growing exponentials) or with vanishing limiting gamma.
AsymptoticLimits asymptotic_gauge_limits(const BathSchedule& schedule);

} // namespace sqz
