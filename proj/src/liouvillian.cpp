#include "sqz/liouvillian.hpp"

#include <algorithm>
#include <cmath>

#include "sqz/algebra.hpp"

namespace sqz {

namespace {

Operator2 as_complex(const Mat2<int>& m) { return m.cast<Complex>(); }

Superop as_complex(const Mat4<int>& m) { return m.cast<Complex>(); }

void sort_spectrum(std::array<Complex, 4>& values) {
    double scale = 1.0;
    for (const auto& v : values) scale = std::max(scale, std::abs(v));
    const double tie = 1e-12 * scale;
    std::sort(values.begin(), values.end(), [tie](const Complex& a, const Complex& b) {
        if (std::abs(a.real() - b.real()) > tie) return a.real() > b.real();
        return a.imag() < b.imag();
    });
}

} // namespace

DensityMatrix master_equation_rhs(const BathPoint& point, const DensityMatrix& rho) {
    const Operator2 sp = as_complex(pauli::sigma_plus());
    const Operator2 sm = as_complex(pauli::sigma_minus());
    const Operator2 spsm = sp * sm;
    const Operator2 smsp = sm * sp;
    const double g = point.gamma;
    const double n = point.n_param;
    const Complex m = point.m_param;

    DensityMatrix out = 0.5 * g * (n + 1.0) * (2.0 * sm * rho * sp - spsm * rho - rho * spsm);
    out += 0.5 * g * n * (2.0 * sp * rho * sm - smsp * rho - rho * smsp);
    out -= g * m * (sm * rho * sm);
    out -= g * std::conj(m) * (sp * rho * sp);
    return out;
}

RateMatrix build_rate_operator(const BathPoint& point, BuildMethod method) {
    validate(point);
    RateMatrix rate;
    rate.bath = point;
    if (method == BuildMethod::sandwich) {
        for (int k = 0; k < 4; ++k) {
            rate.entries.col(k) = vectorize<Complex>(master_equation_rhs(point, basis_matrix<Complex>(k)));
        }
        return rate;
    }

    const GeneratorSet& gen = composite_generators();
    const double g = point.gamma;
    const double n = point.n_param;
    const Complex m = point.m_param;
    rate.entries = g * ((n + 1.0) * as_complex(gen.j_minus) + n * as_complex(gen.j_plus) -
                        0.5 * as_complex(gen.j0) - m * as_complex(gen.k_minus) -
                        std::conj(m) * as_complex(gen.k_plus) - (n + 0.5) * Superop::Identity());
    return rate;
}

std::array<Complex, 4> spectrum(const RateMatrix& rate) {
    Eigen::ComplexEigenSolver<Superop> solver(rate.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("eigenvalue iteration did not converge for the rate operator");
    }
    std::array<Complex, 4> values;
    for (int i = 0; i < 4; ++i) values[i] = solver.eigenvalues()(i);
    sort_spectrum(values);
    return values;
}

std::array<Complex, 4> spectrum_formula(const BathPoint& point) {
    const double g = point.gamma;
    const double n = point.n_param;
    const double m = std::abs(point.m_param);
    std::array<Complex, 4> values{Complex(0.0), Complex(-g * (2.0 * n + 1.0)), Complex(-g * (n + 0.5 - m)),
                                  Complex(-g * (n + 0.5 + m))};
    sort_spectrum(values);
    return values;
}

DensityMatrix steady_state(const RateMatrix& rate) {
    Eigen::ComplexEigenSolver<Superop> solver(rate.entries);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("eigenvalue iteration did not converge for the rate operator");
    }
    const double scale = std::max(rate.entries.cwiseAbs().maxCoeff(), 1e-300);
    int zero_index = -1;
    int zero_count = 0;
    for (int i = 0; i < 4; ++i) {
        if (std::abs(solver.eigenvalues()(i)) <= 1e-12 * scale) {
            zero_index = i;
            ++zero_count;
        }
    }
    if (zero_count != 1 || rate.entries.isZero(0.0)) {
        throw NumericalFailure(fmt::format("rate operator null space has dimension {}, expected 1", 
                                           rate.entries.isZero(0.0) ? 4 : zero_count));
    }
    const Vec4 v = solver.eigenvectors().col(zero_index);
    const Complex trace = v(0) + v(1);
    if (std::abs(trace) < 1e-14) {
        throw NumericalFailure("null vector of the rate operator has zero trace");
    }
    return unvectorize<Complex>(Vec4(v / trace));
}

void Trajectory::reserve(std::size_t n) {
    times.reserve(n);
    states.reserve(n);
    expectations.reserve(n);
    diagnostics.reserve(n);
}

void Trajectory::push(double t, const DensityMatrix& rho) {
    times.push_back(t);
    states.push_back(rho);
    expectations.push_back(pauli_expectations(rho));
    diagnostics.push_back({(rho.trace() - 1.0).real(), hermiticity_defect(rho), min_eigenvalue(rho)});
}

Trajectory integrate_reference(const BathSchedule& schedule, const DensityMatrix& rho0, const TimeGrid& grid,
                               double step) {
    schedule.validate_on_grid(grid.t_max(), grid.dt_out());
    Trajectory out;
    out.reserve(grid.size());
    auto rhs = [&schedule](double t, const Vec4& y) -> Vec4 {
        return build_rate_operator(schedule_eval(schedule, t), BuildMethod::sandwich).entries * y;
    };
    march<4>(grid, step, vectorize<Complex>(rho0), rhs,
             [&out](std::size_t, double t, const Vec4& y) { out.push(t, unvectorize<Complex>(y)); });
    return out;
}

double default_internal_step(const BathSchedule& schedule, const TimeGrid& grid) {
    double max_gamma = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        max_gamma = std::max(max_gamma, evaluate(schedule.gamma_fn, grid.at(k)));
    }
    const double step = max_gamma > 0.0 ? 1e-3 / max_gamma : 1e-3;
    return std::min(step, grid.dt_out());
}

} // namespace sqz
