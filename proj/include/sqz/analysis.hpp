#pragma once

#include <optional>
#include <span>

namespace sqz {

/// Least-squares slope of log|v| against t over t in [t_lo, t_hi], negated.
/// Samples with |v| <= floor are ignored; nullopt when fewer than two remain
/// (e.g. an identically vanishing signal).
std::optional<double> fit_decay_rate(std::span<const double> times, std::span<const double> values, double t_lo,
                                     double t_hi, double floor = 1e-12);

} // namespace sqz
