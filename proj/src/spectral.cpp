#include "sqz/spectral.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sqz/algebra.hpp"

namespace sqz {

namespace {

// exp(x G) for a generator with G^2 = 0 on the vectorized space.
Superop nilpotent_exp(const Mat4<int>& generator, Complex x) {
    return Superop::Identity() + x * generator.cast<Complex>();
}

} // namespace

TransformationBranch make_branch(double n_param, double theta, AlphaRoot root, EtaSign sign) {
    if (!(n_param >= 0.0) || !std::isfinite(n_param)) {
        throw InvalidInput(fmt::format("N must be finite and >= 0, got {}", n_param));
    }
    if (!std::isfinite(theta)) {
        throw InvalidInput("theta must be finite");
    }
    const double n = n_param;
    TransformationBranch b;
    b.alpha_root = root;
    b.eta_sign = sign;
    b.alpha_plus = root == AlphaRoot::stable ? n / (n + 1.0) : -1.0;
    b.alpha_minus = -(n + 1.0) / (2.0 * (n + 1.0) * b.alpha_plus + 1.0);
    const Complex phase = std::polar(1.0, theta);
    b.eta_plus = sign == EtaSign::plus ? phase : -phase;
    b.eta_minus = -1.0 / (2.0 * b.eta_plus);
    return b;
}

std::array<TransformationBranch, 2> solve_transformation_conditions(double n_param, double theta) {
    return {make_branch(n_param, theta, AlphaRoot::unstable, EtaSign::plus),
            make_branch(n_param, theta, AlphaRoot::stable, EtaSign::minus)};
}

std::array<double, 4> condition_residuals(double n_param, Complex m_param, const TransformationBranch& b) {
    const double n = n_param;
    return {
        std::abs((n + 1.0) * b.alpha_plus * b.alpha_plus + b.alpha_plus - n),
        std::abs((n + 1.0) * (1.0 + 2.0 * b.alpha_plus * b.alpha_minus) + b.alpha_minus),
        std::abs(m_param * b.eta_plus * b.eta_plus - std::conj(m_param)),
        std::abs(1.0 + 2.0 * b.eta_plus * b.eta_minus),
    };
}

double alpha_condition_residual(double n_param, double alpha_plus) {
    return (n_param + 1.0) * alpha_plus * alpha_plus + alpha_plus - n_param;
}

Complex hs_inner(const DensityMatrix& a, const DensityMatrix& b) { return (a.adjoint() * b).trace(); }

std::array<EigenMode, 4> eigen_modes(double gamma, double n_param, Complex m_param,
                                     const TransformationBranch& branch) {
    validate(BathPoint{gamma, n_param, m_param});
    const auto residuals = condition_residuals(n_param, m_param, branch);
    const double scale = std::max({1.0, n_param + 1.0, std::abs(m_param)});
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        if (residuals[i] > 1e-12 * scale) {
            throw InvalidInput(fmt::format("transformation branch violates condition {} (residual {:.3e})", i + 1,
                                           residuals[i]));
        }
    }

    const GeneratorSet& gen = composite_generators();
    const Superop u = nilpotent_exp(gen.j_plus, branch.alpha_plus) * nilpotent_exp(gen.j_minus, branch.alpha_minus) *
                      nilpotent_exp(gen.k_plus, branch.eta_plus) * nilpotent_exp(gen.k_minus, branch.eta_minus);
    const Superop u_inv =
        nilpotent_exp(gen.k_minus, -branch.eta_minus) * nilpotent_exp(gen.k_plus, -branch.eta_plus) *
        nilpotent_exp(gen.j_minus, -branch.alpha_minus) * nilpotent_exp(gen.j_plus, -branch.alpha_plus);
    const Superop dual_map = u_inv.adjoint();

    const Complex population = (n_param + 1.0) * branch.alpha_plus + 0.5;
    const Complex coherence = m_param * branch.eta_plus;
    std::array<EigenMode, 4> modes;
    for (int k = 0; k < 4; ++k) {
        EigenMode& mode = modes[k];
        mode.s = kBasisLabels[k][0];
        mode.s_prime = kBasisLabels[k][1];
        mode.beta = -gamma * (population * (0.5 * (mode.s + mode.s_prime)) -
                              coherence * (0.5 * (mode.s - mode.s_prime)) + (n_param + 0.5));
        mode.mode = unvectorize<Complex>(Vec4(u.col(k)));
        mode.dual = unvectorize<Complex>(Vec4(dual_map.col(k)));
    }
    return modes;
}

AsymptoticLimits asymptotic_gauge_limits(const BathSchedule& schedule) {
    const auto gamma = limit_at_infinity(schedule.gamma_fn);
    if (!gamma) {
        throw UnsupportedSchedule(fmt::format("gamma(t) = {} has no limit", describe(schedule.gamma_fn)));
    }
    if (!(*gamma > 0.0)) {
        throw UnsupportedSchedule("limiting decay rate is zero; no relaxation to a steady state");
    }

    AsymptoticLimits out;
    out.gamma = *gamma;
    if (const auto* th = std::get_if<ThermalOverride>(&schedule.mode)) {
        out.n_param = th->n_bar;
        out.m_param = 0.0;
        out.eta_plus = Complex(0.0);
    } else {
        const auto r = limit_at_infinity(schedule.r_fn);
        const auto theta = limit_at_infinity(schedule.theta_fn);
        if (!r || !theta) {
            throw UnsupportedSchedule(fmt::format("squeezing controls r(t) = {}, theta(t) = {} do not converge",
                                                  describe(schedule.r_fn), describe(schedule.theta_fn)));
        }
        const auto [n, m] = bath_params(*r, *theta);
        out.n_param = n;
        out.m_param = m;
        if (std::abs(m) > 0.0) out.eta_plus = -std::polar(1.0, *theta);
    }
    out.alpha_plus = out.n_param / (out.n_param + 1.0);
    out.steady = thermal_like_steady_state(out.n_param);
    return out;
}

} // namespace sqz
