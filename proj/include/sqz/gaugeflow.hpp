#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sqz/bath.hpp"
#include "sqz/density.hpp"
#include "sqz/liouvillian.hpp"
#include "sqz/rk4.hpp"

namespace sqz {

/// Parameters of the time-dependent similarity transformation
/// U_g = exp(a+ J+) exp(a- J-) exp(e+ K+) exp(e- K-), together with the
/// logarithms of the accumulated diagonal factors f_{s,s'}.
///
/// log_factors is indexed like the vectorized density matrix:
/// (s,s') = (+1,+1), (-1,-1), (+1,-1), (-1,+1).
struct GaugeState {
    Complex alpha_plus{};
    Complex alpha_minus{};
    Complex eta_plus{};
    Complex eta_minus{};
    std::array<Complex, 4> log_factors{};

    Complex log_factor(int s, int s_prime) const;
    Complex factor(int s, int s_prime) const { return std::exp(log_factor(s, s_prime)); }

    CVec<8> pack() const;
    static GaugeState unpack(const CVec<8>& v);
};

/// Right-hand sides of the gauge equations at bath point (gamma, N, M):
///   a+' = -gamma (N+1) a+^2 - gamma a+ + gamma N
///   a-' =  gamma (N+1) (1 + 2 a+ a-) + gamma a-
///   e+' =  gamma (M e+^2 - M*)
///   e-' = -gamma M (1 + 2 e+ e-)
///   (log f_{s,s'})' = -gamma { [(N+1) a+ + 1/2](s+s')/2 - M e+ (s-s')/2 + (2N+1)/2 }
GaugeState gauge_derivatives(const BathPoint& point, const GaugeState& g);
GaugeState gauge_derivatives(double t, const GaugeState& g, const BathSchedule& schedule);

/// Integrates the gauge equations from the identity transformation across the grid.
std::vector<GaugeState> evolve_gauge(const BathSchedule& schedule, const TimeGrid& grid, double step);

/// Closed-form gauge parameters for constant gamma, N and real M.
GaugeState autonomous_gauge(double gamma, double n_param, double m_param, double t);

/// Coefficients lambda_{s,s'} of rho(0) in the |s><s'| basis, vectorized order.
class InitialDecomposition {
public:
    /// Requires a Hermitian trace-one matrix (to 1e-9).
    static InitialDecomposition from_density(const DensityMatrix& rho);
    /// rho(0) = |psi><psi|, psi = mu|+1> + nu|-1>; requires |mu|^2 + |nu|^2 = 1 (to 1e-9).
    static InitialDecomposition from_pure(Complex mu, Complex nu);
    /// mu = sqrt(mu_abs2) e^{i mu_phase}, nu likewise.
    static InitialDecomposition from_polar(double mu_abs2, double mu_phase, double nu_abs2, double nu_phase);

    Complex lambda(int s, int s_prime) const;
    const Vec4& lambdas() const { return lambdas_; }
    DensityMatrix density() const;
    std::optional<std::pair<Complex, Complex>> amplitudes() const { return amplitudes_; }

private:
    Vec4 lambdas_ = Vec4::Zero();
    std::optional<std::pair<Complex, Complex>> amplitudes_;
};

/// rho(t) = U_g(t) diag(f_{s,s'}) rho(0), written out element by element.
DensityMatrix assemble_density(const InitialDecomposition& init, const GaugeState& g);

/// Closed-form Bloch components for constant gamma, N and real M:
///   <sx> = (mu nu* + mu* nu) e^{-gamma (N+M+1/2) t}
///   <sy> = -i (mu* nu - mu nu*) e^{-gamma (N-M+1/2) t}
///   <sz> = (2 [|mu|^2 (N+1) - |nu|^2 N] e^{-gamma (2N+1) t} - 1) / (2N+1)
Expectations autonomous_expectations(Complex mu, Complex nu, double gamma, double n_param, double m_param, double t);

/// Gauge-flow solution sampled on the grid, with the per-point gauge states.
struct AnalyticRun {
    Trajectory trajectory;
    std::vector<GaugeState> gauge;
};

AnalyticRun integrate_analytic(const BathSchedule& schedule, const InitialDecomposition& init, const TimeGrid& grid,
                               double step);

/// Residuals |f_{--}(1 + a+) - 1| and |f_{++}(1 + a+ a- + a-) - 1| (trace preservation).
std::array<double, 2> trace_identity_residuals(const GaugeState& g);

} // namespace sqz
