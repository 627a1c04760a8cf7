#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>

#include "sqz/core.hpp"

namespace sqz {

/// Reservoir parameters entering the master equation at one instant.
struct BathPoint {
    double gamma = 0.0;   // decay rate, >= 0
    double n_param = 0.0; // N, >= 0
    Complex m_param{};    // M, phase-sensitive two-photon correlation

    bool operator==(const BathPoint&) const = default;
};

/// Throws InvalidInput unless gamma, N are finite and non-negative and M is finite.
void validate(const BathPoint& point);

/// N = sinh^2(r), M = cosh(r) sinh(r) e^{-i theta}. The phase is wrapped into
/// [-pi, pi] before use.
std::pair<double, Complex> bath_params(double r, double theta);

namespace fn {

struct Constant {
    double c = 0.0;
};

/// c1 * exp(-c2 t)
struct ExpDecay {
    double c1 = 0.0;
    double c2 = 0.0;
};

/// max(0, a + b t)
struct Ramp {
    double a = 0.0;
    double b = 0.0;
};

/// a + b sin(omega t + phase)
struct Sinusoid {
    double a = 0.0;
    double b = 0.0;
    double omega = 0.0;
    double phase = 0.0;
};

} // namespace fn

using ScalarFunction = std::variant<fn::Constant, fn::ExpDecay, fn::Ramp, fn::Sinusoid>;

double evaluate(const ScalarFunction& f, double t);

/// Limit as t -> infinity, or nullopt when the function does not converge.
std::optional<double> limit_at_infinity(const ScalarFunction& f);

std::string describe(const ScalarFunction& f);

struct IdealSqueezing {};

/// Replaces (N, M) by (n_bar, 0) regardless of r and theta.
struct ThermalOverride {
    double n_bar = 0.0;
};

using BathMode = std::variant<IdealSqueezing, ThermalOverride>;

struct BathSchedule {
    ScalarFunction gamma_fn = fn::Constant{1.0};
    ScalarFunction r_fn = fn::Constant{0.0};
    ScalarFunction theta_fn = fn::Constant{0.0};
    BathMode mode = IdealSqueezing{};
    double horizon = std::numeric_limits<double>::infinity();

    bool thermal() const { return std::holds_alternative<ThermalOverride>(mode); }

    /// Samples r and gamma on t = 0, dt, 2 dt, ... up to t_max and throws
    /// InvalidInput on a negative or non-finite value.
    void validate_on_grid(double t_max, double dt) const;
};

/// Reservoir parameters at time t. Throws RangeError outside [0, horizon].
BathPoint schedule_eval(const BathSchedule& schedule, double t);

/// Squeezing schedule r = c1 exp(-c2 t) with gamma = 1, theta = 0.
BathSchedule exp_decay_squeezing(double c1, double c2);

/// All three controls constant.
BathSchedule constant_schedule(double gamma, double r, double theta = 0.0);

} // namespace sqz
