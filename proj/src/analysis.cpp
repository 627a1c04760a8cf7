#include "sqz/analysis.hpp"

#include <cmath>
#include <cstddef>

#include "sqz/core.hpp"

namespace sqz {

std::optional<double> fit_decay_rate(std::span<const double> times, std::span<const double> values, double t_lo,
                                     double t_hi, double floor) {
    if (times.size() != values.size()) {
        throw InvalidInput("fit_decay_rate: times and values differ in length");
    }
    double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < t_lo || t > t_hi || !(std::abs(values[i]) > floor)) continue;
        const double y = std::log(std::abs(values[i]));
        sum_t += t;
        sum_y += y;
        sum_tt += t * t;
        sum_ty += t * y;
        ++count;
    }
    if (count < 2) return std::nullopt;
    const double n = static_cast<double>(count);
    const double denom = n * sum_tt - sum_t * sum_t;
    if (denom <= 0.0) return std::nullopt;
    return -(n * sum_ty - sum_t * sum_y) / denom;
}

} // namespace sqz
