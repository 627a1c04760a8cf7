#include "sqz/gaugeflow.hpp"

#include <cmath>

#include "sqz/algebra.hpp"

namespace sqz {

namespace {

constexpr double kNormTolerance = 1e-9;

// log(cosh(x)) without overflow.
double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

} // namespace

Complex GaugeState::log_factor(int s, int s_prime) const { return log_factors[vec_index(s, s_prime)]; }

CVec<8> GaugeState::pack() const {
    CVec<8> v;
    v << alpha_plus, alpha_minus, eta_plus, eta_minus, log_factors[0], log_factors[1], log_factors[2],
        log_factors[3];
    return v;
}

GaugeState GaugeState::unpack(const CVec<8>& v) {
    return {v(0), v(1), v(2), v(3), {v(4), v(5), v(6), v(7)}};
}

GaugeState gauge_derivatives(const BathPoint& point, const GaugeState& g) {
    const double gamma = point.gamma;
    const double n = point.n_param;
    const Complex m = point.m_param;
    const Complex ap = g.alpha_plus;
    const Complex am = g.alpha_minus;
    const Complex ep = g.eta_plus;
    const Complex em = g.eta_minus;

    GaugeState d;
    d.alpha_plus = -gamma * (n + 1.0) * ap * ap - gamma * ap + gamma * n;
    d.alpha_minus = gamma * (n + 1.0) * (1.0 + 2.0 * ap * am) + gamma * am;
    d.eta_plus = gamma * (m * ep * ep - std::conj(m));
    d.eta_minus = -gamma * m * (1.0 + 2.0 * ep * em);

    const Complex population = (n + 1.0) * ap + 0.5;
    const Complex coherence = m * ep;
    const double common = n + 0.5;
    for (int k = 0; k < 4; ++k) {
        const int s = kBasisLabels[k][0];
        const int sp = kBasisLabels[k][1];
        d.log_factors[k] = -gamma * (population * (0.5 * (s + sp)) - coherence * (0.5 * (s - sp)) + common);
    }
    return d;
}

GaugeState gauge_derivatives(double t, const GaugeState& g, const BathSchedule& schedule) {
    return gauge_derivatives(schedule_eval(schedule, t), g);
}

std::vector<GaugeState> evolve_gauge(const BathSchedule& schedule, const TimeGrid& grid, double step) {
    schedule.validate_on_grid(grid.t_max(), grid.dt_out());
    std::vector<GaugeState> out;
    out.reserve(grid.size());
    auto rhs = [&schedule](double t, const CVec<8>& y) -> CVec<8> {
        return gauge_derivatives(schedule_eval(schedule, t), GaugeState::unpack(y)).pack();
    };
    march<8>(grid, step, CVec<8>::Zero(), rhs,
             [&out](std::size_t, double, const CVec<8>& y) { out.push_back(GaugeState::unpack(y)); });
    return out;
}

GaugeState autonomous_gauge(double gamma, double n_param, double m_param, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidInput(fmt::format("autonomous gauge needs finite t >= 0, got {}", t));
    }
    validate(BathPoint{gamma, n_param, Complex(m_param)});

    const double n = n_param;
    const double kt = gamma * (2.0 * n + 1.0) * t;
    const double decay = std::exp(-kt);
    const double one_minus_decay = -std::expm1(-kt);
    const double denom = (n + 1.0) + n * decay;
    const double x = gamma * m_param * t;

    GaugeState g;
    // N (1 - E) / ((N+1) + N E) is (1 - E)/((N+1)/N + E) rewritten with the
    // N = 0 limit (a+ = 0) built in.
    g.alpha_plus = n * one_minus_decay / denom;
    // (N+1) N [(N+1)/N + E] (1 - E) / ((2N+1)^2 E), with (1 - E)/E = expm1(kt).
    g.alpha_minus = (n + 1.0) * denom * std::expm1(kt) / ((2.0 * n + 1.0) * (2.0 * n + 1.0));
    // (1 - e^{2x})/(1 + e^{2x}) and (1 - e^{2x})(1 + e^{2x})/(4 e^{2x}).
    g.eta_plus = -std::tanh(x);
    g.eta_minus = -0.5 * std::sinh(2.0 * x);

    // log(((N+1) + N E)/(2N+1)), exact zero at t = 0.
    const double log_ratio = std::log1p(-n * one_minus_decay / (2.0 * n + 1.0));
    g.log_factors[vec_index(1, 1)] = -kt - log_ratio;
    g.log_factors[vec_index(-1, -1)] = log_ratio;
    g.log_factors[vec_index(1, -1)] = -gamma * (n + 0.5) * t - log_cosh(x);
    g.log_factors[vec_index(-1, 1)] = -gamma * (n + 0.5) * t + log_cosh(x);
    return g;
}

InitialDecomposition InitialDecomposition::from_density(const DensityMatrix& rho) {
    if (!rho.allFinite()) {
        throw InvalidInput("initial density matrix has non-finite entries");
    }
    if (std::abs(rho.trace() - 1.0) > kNormTolerance) {
        throw InvalidInput(fmt::format("initial density matrix has trace {} (expected 1)", rho.trace().real()));
    }
    if (hermiticity_defect(rho) > kNormTolerance) {
        throw InvalidInput("initial density matrix is not Hermitian");
    }
    InitialDecomposition out;
    out.lambdas_ = vectorize<Complex>(rho);
    return out;
}

InitialDecomposition InitialDecomposition::from_pure(Complex mu, Complex nu) {
    const double norm = std::norm(mu) + std::norm(nu);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
        throw InvalidInput(fmt::format("|mu|^2 + |nu|^2 = {} (expected 1)", norm));
    }
    InitialDecomposition out;
    out.lambdas_ = vectorize<Complex>(pure_state(mu, nu));
    out.amplitudes_ = std::make_pair(mu, nu);
    return out;
}

InitialDecomposition InitialDecomposition::from_polar(double mu_abs2, double mu_phase, double nu_abs2,
                                                      double nu_phase) {
    if (!(mu_abs2 >= 0.0) || !(nu_abs2 >= 0.0)) {
        throw InvalidInput("|mu|^2 and |nu|^2 must be non-negative");
    }
    return from_pure(std::polar(std::sqrt(mu_abs2), mu_phase), std::polar(std::sqrt(nu_abs2), nu_phase));
}

Complex InitialDecomposition::lambda(int s, int s_prime) const { return lambdas_(vec_index(s, s_prime)); }

DensityMatrix InitialDecomposition::density() const { return unvectorize<Complex>(lambdas_); }

DensityMatrix assemble_density(const InitialDecomposition& init, const GaugeState& g) {
    const Complex l_pp = init.lambda(1, 1);
    const Complex l_mm = init.lambda(-1, -1);
    const Complex l_pm = init.lambda(1, -1);
    const Complex l_mp = init.lambda(-1, 1);
    const Complex f_pp = g.factor(1, 1);
    const Complex f_mm = g.factor(-1, -1);
    const Complex f_pm = g.factor(1, -1);
    const Complex f_mp = g.factor(-1, 1);
    const Complex ap = g.alpha_plus;
    const Complex am = g.alpha_minus;
    const Complex ep = g.eta_plus;
    const Complex em = g.eta_minus;

    DensityMatrix rho;
    rho(0, 0) = l_pp * f_pp * (1.0 + ap * am) + l_mm * f_mm * ap;
    rho(1, 1) = l_pp * f_pp * am + l_mm * f_mm;
    rho(0, 1) = l_pm * f_pm * (1.0 + ep * em) + l_mp * f_mp * ep;
    rho(1, 0) = l_pm * f_pm * em + l_mp * f_mp;
    return rho;
}

Expectations autonomous_expectations(Complex mu, Complex nu, double gamma, double n_param, double m_param, double t) {
    const double norm = std::norm(mu) + std::norm(nu);
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTolerance) {
        throw InvalidInput(fmt::format("|mu|^2 + |nu|^2 = {} (expected 1)", norm));
    }
    if (!(t >= 0.0)) {
        throw InvalidInput(fmt::format("autonomous expectations need t >= 0, got {}", t));
    }
    const double n = n_param;
    const double m = m_param;
    const Complex mu_nu = mu * std::conj(nu);
    const Complex i{0.0, 1.0};
    Expectations e;
    e.x = (mu_nu + std::conj(mu_nu)).real() * std::exp(-gamma * (n + m + 0.5) * t);
    e.y = ((std::conj(mu) * nu - mu * std::conj(nu)) / i).real() * std::exp(-gamma * (n - m + 0.5) * t);
    e.z = (2.0 * (std::norm(mu) * (n + 1.0) - std::norm(nu) * n) * std::exp(-gamma * (2.0 * n + 1.0) * t) - 1.0) /
          (2.0 * n + 1.0);
    return e;
}

AnalyticRun integrate_analytic(const BathSchedule& schedule, const InitialDecomposition& init, const TimeGrid& grid,
                               double step) {
    AnalyticRun run;
    run.gauge = evolve_gauge(schedule, grid, step);
    run.trajectory.reserve(grid.size());
    for (std::size_t k = 0; k < run.gauge.size(); ++k) {
        run.trajectory.push(grid.at(k), assemble_density(init, run.gauge[k]));
    }
    return run;
}

std::array<double, 2> trace_identity_residuals(const GaugeState& g) {
    const Complex ground = g.factor(-1, -1) * (1.0 + g.alpha_plus) - 1.0;
    const Complex excited = g.factor(1, 1) * (1.0 + g.alpha_plus * g.alpha_minus + g.alpha_minus) - 1.0;
    return {std::abs(ground), std::abs(excited)};
}

} // namespace sqz
