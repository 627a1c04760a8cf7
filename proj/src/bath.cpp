#include "sqz/bath.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace sqz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double wrap_phase(double theta) { return std::remainder(theta, 2.0 * std::numbers::pi); }

} // namespace

void validate(const BathPoint& point) {
    if (!std::isfinite(point.gamma) || point.gamma < 0.0) {
        throw InvalidInput(fmt::format("bath point: gamma must be finite and >= 0, got {}", point.gamma));
    }
    if (!std::isfinite(point.n_param) || point.n_param < 0.0) {
        throw InvalidInput(fmt::format("bath point: N must be finite and >= 0, got {}", point.n_param));
    }
    if (!std::isfinite(point.m_param.real()) || !std::isfinite(point.m_param.imag())) {
        throw InvalidInput("bath point: M must be finite");
    }
}

std::pair<double, Complex> bath_params(double r, double theta) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw InvalidInput(fmt::format("squeezing parameter r must be finite and >= 0, got {}", r));
    }
    if (!std::isfinite(theta)) {
        throw InvalidInput("reference phase theta must be finite");
    }
    const double sh = std::sinh(r);
    const double ch = std::cosh(r);
    return {sh * sh, std::polar(ch * sh, -wrap_phase(theta))};
}

double evaluate(const ScalarFunction& f, double t) {
    return std::visit(
        overloaded{
            [](const fn::Constant& c) { return c.c; },
            [t](const fn::ExpDecay& e) { return e.c2 == 0.0 ? e.c1 : e.c1 * std::exp(-e.c2 * t); },
            [t](const fn::Ramp& r) { return std::max(0.0, r.a + r.b * t); },
            [t](const fn::Sinusoid& s) { return s.b == 0.0 ? s.a : s.a + s.b * std::sin(s.omega * t + s.phase); },
        },
        f);
}

std::optional<double> limit_at_infinity(const ScalarFunction& f) {
    return std::visit(
        overloaded{
            [](const fn::Constant& c) -> std::optional<double> { return c.c; },
            [](const fn::ExpDecay& e) -> std::optional<double> {
                if (e.c1 == 0.0 || e.c2 > 0.0) return 0.0;
                if (e.c2 == 0.0) return e.c1;
                return std::nullopt;
            },
            [](const fn::Ramp& r) -> std::optional<double> {
                if (r.b < 0.0) return 0.0;
                if (r.b == 0.0) return std::max(0.0, r.a);
                return std::nullopt;
            },
            [](const fn::Sinusoid& s) -> std::optional<double> {
                if (s.b == 0.0 || s.omega == 0.0) return s.a + s.b * std::sin(s.phase);
                return std::nullopt;
            },
        },
        f);
}

std::string describe(const ScalarFunction& f) {
    return std::visit(
        overloaded{
            [](const fn::Constant& c) { return fmt::format("{}", c.c); },
            [](const fn::ExpDecay& e) { return fmt::format("{}*exp(-{}*t)", e.c1, e.c2); },
            [](const fn::Ramp& r) { return fmt::format("max(0, {} + {}*t)", r.a, r.b); },
            [](const fn::Sinusoid& s) { return fmt::format("{} + {}*sin({}*t + {})", s.a, s.b, s.omega, s.phase); },
        },
        f);
}

void BathSchedule::validate_on_grid(double t_max, double dt) const {
    if (!(dt > 0.0) || !(t_max >= 0.0)) {
        throw InvalidInput("schedule validation needs t_max >= 0 and dt > 0");
    }
    if (t_max > horizon) {
        throw InvalidInput(fmt::format("grid end {} exceeds schedule horizon {}", t_max, horizon));
    }
    if (const auto* th = std::get_if<ThermalOverride>(&mode); th && !(th->n_bar >= 0.0 && std::isfinite(th->n_bar))) {
        throw InvalidInput(fmt::format("thermal override n_bar must be finite and >= 0, got {}", th->n_bar));
    }
    const auto steps = static_cast<long long>(std::ceil(t_max / dt - 1e-9));
    for (long long k = 0; k <= steps; ++k) {
        const double t = std::min(t_max, static_cast<double>(k) * dt);
        const double g = evaluate(gamma_fn, t);
        const double r = evaluate(r_fn, t);
        const double th = evaluate(theta_fn, t);
        if (!std::isfinite(g) || g < 0.0) {
            throw InvalidInput(fmt::format("gamma(t) = {} at t = {} is negative or non-finite", g, t));
        }
        if (!std::isfinite(r) || r < 0.0) {
            throw InvalidInput(fmt::format("r(t) = {} at t = {} is negative or non-finite", r, t));
        }
        if (!std::isfinite(th)) {
            throw InvalidInput(fmt::format("theta(t) is non-finite at t = {}", t));
        }
    }
}

BathPoint schedule_eval(const BathSchedule& schedule, double t) {
    if (!(t >= 0.0) || t > schedule.horizon) {
        throw RangeError(fmt::format("t = {} outside schedule horizon [0, {}]", t, schedule.horizon));
    }
    const double gamma = evaluate(schedule.gamma_fn, t);
    if (const auto* th = std::get_if<ThermalOverride>(&schedule.mode)) {
        return {gamma, th->n_bar, Complex{0.0, 0.0}};
    }
    const auto [n, m] = bath_params(evaluate(schedule.r_fn, t), evaluate(schedule.theta_fn, t));
    return {gamma, n, m};
}

BathSchedule exp_decay_squeezing(double c1, double c2) {
    BathSchedule s;
    s.r_fn = fn::ExpDecay{c1, c2};
    return s;
}

BathSchedule constant_schedule(double gamma, double r, double theta) {
    BathSchedule s;
    s.gamma_fn = fn::Constant{gamma};
    s.r_fn = fn::Constant{r};
    s.theta_fn = fn::Constant{theta};
    return s;
}

} // namespace sqz
