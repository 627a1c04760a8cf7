#include "sqz/rk4.hpp"

namespace sqz {

TimeGrid::TimeGrid(double t_max, double dt_out) : t_max_(t_max), dt_out_(dt_out), intervals_(0) {
    if (!std::isfinite(t_max) || t_max < 0.0) {
        throw InvalidInput(fmt::format("t_max must be finite and >= 0, got {}", t_max));
    }
    if (!std::isfinite(dt_out) || dt_out <= 0.0) {
        throw InvalidInput(fmt::format("output step must be finite and > 0, got {}", dt_out));
    }
    const double n = std::round(t_max / dt_out);
    if (std::abs(n * dt_out - t_max) > 1e-9 * std::max(1.0, t_max)) {
        throw InvalidInput(fmt::format("t_max = {} is not a multiple of the output step {}", t_max, dt_out));
    }
    intervals_ = static_cast<std::size_t>(n);
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = at(k);
    return out;
}

std::size_t substeps_per_interval(double dt_out, double step) {
    if (!std::isfinite(step) || step <= 0.0) {
        throw InvalidInput(fmt::format("internal step must be finite and > 0, got {}", step));
    }
    if (step > dt_out * (1.0 + 1e-12)) {
        throw InvalidInput(fmt::format("internal step {} exceeds output step {}", step, dt_out));
    }
    return static_cast<std::size_t>(std::ceil(dt_out / step - 1e-9));
}

} // namespace sqz
