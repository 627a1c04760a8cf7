#pragma once

#include <array>
#include <vector>

#include "sqz/bath.hpp"
#include "sqz/density.hpp"
#include "sqz/rk4.hpp"

namespace sqz {

enum class BuildMethod {
    sandwich,  // master equation applied to each basis matrix
    algebraic, // linear combination of the composite J/K generators
};

/// Rate operator Gamma on the vectorized density matrix, d vec(rho)/dt = Gamma vec(rho).
struct RateMatrix {
    Superop entries = Superop::Zero();
    BathPoint bath;

    Eigen::Matrix2cd population_block() const { return entries.topLeftCorner<2, 2>(); }
    Eigen::Matrix2cd coherence_block() const { return entries.bottomRightCorner<2, 2>(); }
};

/// Right-hand side of the master equation evaluated directly on a 2x2 matrix:
///   gamma/2 (N+1) (2 s- rho s+ - s+ s- rho - rho s+ s-)
/// + gamma/2 N     (2 s+ rho s- - s- s+ rho - rho s- s+)
/// - gamma M s- rho s- - gamma M* s+ rho s+
DensityMatrix master_equation_rhs(const BathPoint& point, const DensityMatrix& rho);

RateMatrix build_rate_operator(const BathPoint& point, BuildMethod method = BuildMethod::algebraic);

/// Eigenvalues sorted by real part descending, ties by imaginary part ascending.
std::array<Complex, 4> spectrum(const RateMatrix& rate);

/// Closed-form spectrum {0, -gamma(2N+1), -gamma(N+1/2-|M|), -gamma(N+1/2+|M|)}, same ordering.
std::array<Complex, 4> spectrum_formula(const BathPoint& point);

/// Normalized null vector of the rate operator. Throws NumericalFailure when the
/// null space is not one-dimensional (e.g. gamma = 0).
DensityMatrix steady_state(const RateMatrix& rate);

struct Diagnostics {
    double trace_error = 0.0; // trace - 1
    double hermiticity_defect = 0.0;
    double min_eigenvalue = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<Expectations> expectations;
    std::vector<Diagnostics> diagnostics;

    void reserve(std::size_t n);
    void push(double t, const DensityMatrix& rho);
    std::size_t size() const { return times.size(); }
};

/// Brute-force fourth-order integration of d vec(rho)/dt = Gamma(t) vec(rho),
/// with Gamma rebuilt from the master equation at every stage time.
Trajectory integrate_reference(const BathSchedule& schedule, const DensityMatrix& rho0, const TimeGrid& grid,
                               double step);

/// Default internal step 1e-3 / max gamma over the grid.
double default_internal_step(const BathSchedule& schedule, const TimeGrid& grid);

} // namespace sqz
