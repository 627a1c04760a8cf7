#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <fmt/format.h>

#include "sqz/core.hpp"

namespace sqz {

/// Uniform output grid t_k = k * dt_out, k = 0..n, with n * dt_out = t_max.
class TimeGrid {
public:
    TimeGrid(double t_max, double dt_out);

    std::size_t size() const { return intervals_ + 1; }
    std::size_t intervals() const { return intervals_; }
    double at(std::size_t k) const { return static_cast<double>(k) * dt_out_; }
    double t_max() const { return t_max_; }
    double dt_out() const { return dt_out_; }
    std::vector<double> times() const;

private:
    double t_max_;
    double dt_out_;
    std::size_t intervals_;
};

/// Number of equal substeps of size <= step covering one output interval.
std::size_t substeps_per_interval(double dt_out, double step);

template <int Dim>
using CVec = Eigen::Matrix<Complex, Dim, 1>;

/// Classic fourth-order Runge-Kutta with Kahan-compensated accumulation of the
/// state, so that round-off stays well below the truncation error over
/// O(1e5) steps.
template <int Dim>
class CompensatedRk4 {
public:
    explicit CompensatedRk4(const CVec<Dim>& y0) : y_(y0), carry_(CVec<Dim>::Zero()) {}

    template <class Rhs>
    void step(Rhs&& rhs, double t, double h) {
        const CVec<Dim> k1 = rhs(t, y_);
        const CVec<Dim> k2 = rhs(t + 0.5 * h, (y_ + (0.5 * h) * k1).eval());
        const CVec<Dim> k3 = rhs(t + 0.5 * h, (y_ + (0.5 * h) * k2).eval());
        const CVec<Dim> k4 = rhs(t + h, (y_ + h * k3).eval());
        const CVec<Dim> increment = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const CVec<Dim> corrected = increment - carry_;
        const CVec<Dim> next = y_ + corrected;
        carry_ = (next - y_) - corrected;
        y_ = next;
    }

    const CVec<Dim>& state() const { return y_; }

private:
    CVec<Dim> y_;
    CVec<Dim> carry_;
};

template <int Dim>
bool all_finite(const CVec<Dim>& v) {
    for (int i = 0; i < Dim; ++i) {
        if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
    }
    return true;
}

/// Integrates y' = rhs(t, y) from y(0) = y0 across the output grid, calling
/// on_point(k, t_k, y(t_k)) at every grid point including t = 0. Substep times
/// are t_k + j h, never accumulated.
template <int Dim, class Rhs, class OnPoint>
void march(const TimeGrid& grid, double step, const CVec<Dim>& y0, Rhs&& rhs, OnPoint&& on_point) {
    CompensatedRk4<Dim> stepper(y0);
    on_point(std::size_t{0}, 0.0, stepper.state());
    if (grid.intervals() == 0) return;

    const std::size_t m = substeps_per_interval(grid.dt_out(), step);
    const double h = grid.dt_out() / static_cast<double>(m);
    for (std::size_t k = 0; k < grid.intervals(); ++k) {
        const double t0 = grid.at(k);
        for (std::size_t j = 0; j < m; ++j) {
            const double t = t0 + static_cast<double>(j) * h;
            stepper.step(rhs, t, h);
            if (!all_finite<Dim>(stepper.state())) {
                throw NumericalFailure(fmt::format("non-finite state after step ending at t = {:.6g}", t + h), t + h);
            }
        }
        on_point(k + 1, grid.at(k + 1), stepper.state());
    }
}

} // namespace sqz
