#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sqz/analysis.hpp"
#include "sqz/gaugeflow.hpp"
#include "sqz/liouvillian.hpp"

using namespace sqz;

namespace {

const Complex kMuOdd = std::polar(std::sqrt(0.2), std::numbers::pi / 3);
const Complex kNu = std::sqrt(0.8);

double max_gauge_difference(const GaugeState& a, const GaugeState& b) {
    return (a.pack() - b.pack()).cwiseAbs().maxCoeff();
}

} // namespace

TEST(GaugeDerivatives, AtIdentity) {
    const BathPoint p{1.5, 0.4, Complex(0.3, -0.6)};
    const GaugeState d = gauge_derivatives(p, GaugeState{});
    EXPECT_EQ(d.alpha_plus, Complex(1.5 * 0.4));
    EXPECT_EQ(d.alpha_minus, Complex(1.5 * 1.4));
    EXPECT_EQ(d.eta_plus, -1.5 * std::conj(p.m_param));
    EXPECT_EQ(d.eta_minus, -1.5 * p.m_param);
}

TEST(GaugeDerivatives, FixedPointsOfAlphaPlus) {
    for (double n : {0.0, 0.3, 1.0, 4.0}) {
        GaugeState g;
        g.alpha_minus = Complex(0.7, 0.1);
        g.alpha_plus = n / (n + 1.0);
        EXPECT_NEAR(std::abs(gauge_derivatives({1.0, n, 0.2}, g).alpha_plus), 0.0, 1e-15);
        g.alpha_plus = -1.0;
        EXPECT_NEAR(std::abs(gauge_derivatives({1.0, n, 0.2}, g).alpha_plus), 0.0, 1e-15);
    }
}

TEST(AutonomousGauge, StartsAtIdentity) {
    const GaugeState g = autonomous_gauge(1.0, 0.4, 0.75, 0.0);
    EXPECT_EQ(max_gauge_difference(g, GaugeState{}), 0.0);
    EXPECT_THROW(autonomous_gauge(1.0, 0.4, 0.75, -1.0), InvalidInput);
}

TEST(AutonomousGauge, KnownValues) {
    const GaugeState g = autonomous_gauge(1.0, 1.0, std::numbers::sqrt2, 1.0);
    EXPECT_NEAR(g.alpha_plus.real(), 0.463566653481105, 1e-14);
    EXPECT_NEAR(g.alpha_plus.real(), (1.0 - std::exp(-3.0)) / (2.0 + std::exp(-3.0)), 1e-15);

    // gamma M t = 0.5
    const GaugeState h = autonomous_gauge(1.0, 0.2, 0.25, 2.0);
    EXPECT_NEAR(h.eta_plus.real(), -0.462117157260010, 1e-14);
    EXPECT_EQ(h.eta_plus.imag(), 0.0);
}

TEST(AutonomousGauge, LongTimeLimits) {
    const GaugeState g = autonomous_gauge(1.0, 1.0, std::numbers::sqrt2, 60.0);
    EXPECT_NEAR(g.alpha_plus.real(), 0.5, 1e-15);
    EXPECT_NEAR(g.eta_plus.real(), -1.0, 1e-15);
}

TEST(AutonomousGauge, MatchesIntegratedFlow) {
    for (double r : {0.1, 0.6, 1.2}) {
        const auto [n, m] = bath_params(r, 0.0);
        const TimeGrid grid(10.0, 0.05);
        const auto flow = evolve_gauge(constant_schedule(1.0, r), grid, 1e-3);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const GaugeState exact = autonomous_gauge(1.0, n, m.real(), grid.at(k));
            EXPECT_LE(std::abs(flow[k].alpha_plus - exact.alpha_plus), 1e-9);
            EXPECT_LE(std::abs(flow[k].eta_plus - exact.eta_plus), 1e-9);
            EXPECT_LE(std::abs(flow[k].eta_minus - exact.eta_minus), 1e-9 * std::max(1.0, std::abs(exact.eta_minus)));
            EXPECT_LE(std::abs(flow[k].alpha_minus - exact.alpha_minus), 1e-9 * std::max(1.0, std::abs(exact.alpha_minus)));
            for (int i = 0; i < 4; ++i) EXPECT_LE(std::abs(flow[k].log_factors[i] - exact.log_factors[i]), 1e-9);
        }
    }
}

TEST(Assembly, IdentityGaugeReturnsInitialState) {
    const InitialDecomposition init = InitialDecomposition::from_pure(kMuOdd, kNu);
    EXPECT_EQ(assemble_density(init, GaugeState{}), init.density());
}

TEST(Assembly, AutonomousLongTimeIsSteady) {
    const double n = 1.0, m = std::numbers::sqrt2;
    // Real coherences relax at N + M + 1/2; complex ones also carry the slow N - M + 1/2 mode.
    const auto real_init = InitialDecomposition::from_pure(std::sqrt(0.2), kNu);
    EXPECT_LE(trace_distance(assemble_density(real_init, autonomous_gauge(1.0, n, m, 100.0)),
                             thermal_like_steady_state(n)),
              1e-12);
    const auto complex_init = InitialDecomposition::from_pure(kMuOdd, kNu);
    EXPECT_LE(trace_distance(assemble_density(complex_init, autonomous_gauge(1.0, n, m, 200.0)),
                             thermal_like_steady_state(n)),
              1e-6);
}

TEST(Assembly, FigureOneAgreesWithReferenceAtT1) {
    const TimeGrid grid(1.0, 0.05);
    const auto init = InitialDecomposition::from_pure(kMuOdd, kNu);
    const BathSchedule s = exp_decay_squeezing(0.1, 0.1);
    const AnalyticRun a = integrate_analytic(s, init, grid, 1e-3);
    const Trajectory ref = integrate_reference(s, init.density(), grid, 1e-3);
    EXPECT_LE(trace_distance(a.trajectory.states.back(), ref.states.back()), 1e-8);
}

TEST(AutonomousExpectations, InitialValues) {
    const Expectations e = autonomous_expectations(kMuOdd, kNu, 1.0, 0.3, 0.2, 0.0);
    const Complex p = kMuOdd * std::conj(kNu);
    EXPECT_NEAR(e.x, 2.0 * p.real(), 1e-15);
    EXPECT_NEAR(e.y, -2.0 * p.imag(), 1e-15);
    EXPECT_NEAR(e.z, 0.2 - 0.8, 1e-15);
}

TEST(AutonomousExpectations, VacuumDecay) {
    for (double t : {0.0, 0.5, 2.0, 7.0}) {
        EXPECT_NEAR(autonomous_expectations(1.0, 0.0, 1.0, 0.0, 0.0, t).z, 2.0 * std::exp(-t) - 1.0, 1e-15);
    }
}

TEST(AutonomousExpectations, RealAmplitudesStrongSqueezing) {
    const auto [n, m] = bath_params(0.6, 0.0);
    EXPECT_NEAR(n + m.real() + 0.5, 1.66005846136827, 1e-14);
    for (double t : {0.0, 0.3, 1.0, 4.0}) {
        const Expectations e = autonomous_expectations(std::sqrt(0.2), kNu, 1.0, n, m.real(), t);
        EXPECT_NEAR(e.x, 0.8 * std::exp(-1.66005846136827 * t), 1e-14);
        EXPECT_EQ(e.y, 0.0);
    }
}

TEST(AutonomousExpectations, ThreePipelinesAgree) {
    for (double r : {0.1, 0.6}) {
        const auto [n, m] = bath_params(r, 0.0);
        const TimeGrid grid(10.0, 0.05);
        const auto init = InitialDecomposition::from_pure(kMuOdd, kNu);
        const Trajectory ref = integrate_reference(constant_schedule(1.0, r), init.density(), grid, 1e-3);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double t = grid.at(k);
            const Expectations closed = autonomous_expectations(kMuOdd, kNu, 1.0, n, m.real(), t);
            const Expectations assembled = pauli_expectations(assemble_density(init, autonomous_gauge(1.0, n, m.real(), t)));
            for (const Expectations& other : {assembled, ref.expectations[k]}) {
                EXPECT_LE(std::abs(closed.x - other.x), 1e-8);
                EXPECT_LE(std::abs(closed.y - other.y), 1e-8);
                EXPECT_LE(std::abs(closed.z - other.z), 1e-8);
            }
        }
    }
}

TEST(InitialState, Validation) {
    EXPECT_THROW(InitialDecomposition::from_pure(0.5, 0.5), InvalidInput);
    EXPECT_THROW(InitialDecomposition::from_polar(0.2, 0.0, 0.7, 0.0), InvalidInput);
    DensityMatrix bad = DensityMatrix::Identity() * 0.5;
    bad(0, 1) = 0.1;
    EXPECT_THROW(InitialDecomposition::from_density(bad), InvalidInput);
    const auto ok = InitialDecomposition::from_polar(0.2, std::numbers::pi / 3, 0.8, 0.0);
    EXPECT_LE(std::abs(ok.lambda(1, -1) - kMuOdd * std::conj(kNu)), 1e-16);
    EXPECT_LE(std::abs(ok.lambda(-1, 1) - std::conj(kMuOdd) * kNu), 1e-16);
}

class FlowProperties : public ::testing::TestWithParam<int> {};

TEST_P(FlowProperties, IdentitiesAlongFlow) {
    std::mt19937_64 rng(100 + GetParam());
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BathSchedule s = exp_decay_squeezing(0.05 + 0.8 * u(rng), 0.2 * u(rng));
    s.gamma_fn = fn::Sinusoid{1.0, 0.5 * u(rng), 2.0 * u(rng), 0.0};
    const bool real_case = GetParam() % 2 == 0;
    if (!real_case) s.theta_fn = fn::Ramp{u(rng), 0.05};

    const double mu2 = u(rng);
    const double phase = real_case ? 0.0 : 6.0 * u(rng);
    const auto init = InitialDecomposition::from_polar(mu2, phase, 1.0 - mu2, 0.0);

    const TimeGrid grid(30.0, 0.1);
    const AnalyticRun a = integrate_analytic(s, init, grid, 1e-3);
    const Trajectory ref = integrate_reference(s, init.density(), grid, 1e-3);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto res = trace_identity_residuals(a.gauge[k]);
        EXPECT_LE(res[0], 1e-9);
        EXPECT_LE(res[1], 1e-9);
        const DensityMatrix& rho = a.trajectory.states[k];
        EXPECT_LE(std::abs(rho(1, 0) - std::conj(rho(0, 1))), 1e-9);
        EXPECT_LE(trace_distance(rho, ref.states[k]), 1e-7);
        if (real_case) {
            EXPECT_LE(std::abs(a.trajectory.expectations[k].y), 1e-9);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(RandomSchedules, FlowProperties, ::testing::Range(0, 6));

TEST(DecayAsymmetry, SyOutlivesSx) {
    for (double c1 : {0.1, 0.3, 0.6}) {
        const TimeGrid grid(30.0, 0.05);
        const auto init = InitialDecomposition::from_pure(kMuOdd, kNu);
        const AnalyticRun a = integrate_analytic(exp_decay_squeezing(c1, 0.1), init, grid, 1e-3);
        std::vector<double> x, y;
        for (const auto& e : a.trajectory.expectations) {
            x.push_back(e.x);
            y.push_back(e.y);
        }
        const auto rx = fit_decay_rate(a.trajectory.times, x, 0.0, 5.0);
        const auto ry = fit_decay_rate(a.trajectory.times, y, 0.0, 5.0);
        ASSERT_TRUE(rx && ry);
        EXPECT_LT(*ry, *rx) << "c1 = " << c1;
    }
}
