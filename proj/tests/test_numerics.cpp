#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "sqz/analysis.hpp"
#include "sqz/gaugeflow.hpp"
#include "sqz/liouvillian.hpp"

using namespace sqz;

TEST(TimeGrid, Layout) {
    const TimeGrid g(30.0, 0.05);
    EXPECT_EQ(g.size(), 601u);
    EXPECT_EQ(g.at(600), 30.0);
    EXPECT_EQ(g.times().front(), 0.0);
    EXPECT_THROW(TimeGrid(1.0, 0.3), InvalidInput);
    EXPECT_THROW(TimeGrid(-1.0, 0.1), InvalidInput);
    EXPECT_THROW(TimeGrid(1.0, 0.0), InvalidInput);
}

TEST(TimeGrid, Substeps) {
    EXPECT_EQ(substeps_per_interval(0.05, 1e-3), 50u);
    EXPECT_EQ(substeps_per_interval(0.05, 0.05), 1u);
    EXPECT_EQ(substeps_per_interval(0.05, 0.03), 2u);
    EXPECT_THROW(substeps_per_interval(0.05, 0.1), InvalidInput);
}

TEST(Rk4, FourthOrderOnScalarOde) {
    // y' = -i t y, y(0) = 1, exact exp(-i t^2 / 2).
    auto error_at = [](double h) {
        const TimeGrid grid(2.0, 0.5);
        CVec<1> y0;
        y0(0) = 1.0;
        double err = 0.0;
        march<1>(grid, h, y0, [](double t, const CVec<1>& y) { return CVec<1>(Complex(0.0, -t) * y); },
                 [&](std::size_t, double t, const CVec<1>& y) {
                     err = std::max(err, std::abs(y(0) - std::exp(Complex(0.0, -0.5 * t * t))));
                 });
        return err;
    };
    const double coarse = error_at(0.05), fine = error_at(0.025);
    EXPECT_GT(coarse / fine, 14.0);
    EXPECT_LT(coarse / fine, 18.0);
}

TEST(Rk4, ReportsNonFiniteState) {
    const TimeGrid grid(1.0, 0.5);
    CVec<1> y0;
    y0(0) = 1.0;
    try {
        march<1>(grid, 0.1, y0, [](double t, const CVec<1>& y) { return CVec<1>(t > 0.55 ? y * NAN : y); },
                 [](std::size_t, double, const CVec<1>&) {});
        FAIL() << "expected NumericalFailure";
    } catch (const NumericalFailure& e) {
        ASSERT_TRUE(e.time().has_value());
        EXPECT_NEAR(*e.time(), 0.6, 1e-12);
    }
}

TEST(OracleAgreement, ConvergesWithStep) {
    const TimeGrid grid(30.0, 0.05);
    const auto init = InitialDecomposition::from_pure(std::polar(std::sqrt(0.2), std::numbers::pi / 3), std::sqrt(0.8));
    const BathSchedule s = exp_decay_squeezing(0.6, 0.1);
    auto sup_distance = [&](double h) {
        const AnalyticRun a = integrate_analytic(s, init, grid, h);
        const Trajectory r = integrate_reference(s, init.density(), grid, h);
        double d = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) d = std::max(d, trace_distance(a.trajectory.states[k], r.states[k]));
        return d;
    };
    const double d1 = sup_distance(1e-3);
    EXPECT_LE(d1, 1e-7);
    EXPECT_LE(sup_distance(5e-4), 1e-9);
    EXPECT_GT(sup_distance(2e-2), 1e-9);
}

TEST(DecayFit, RecoversRate) {
    std::vector<double> t, v, z;
    for (int k = 0; k <= 100; ++k) {
        t.push_back(0.05 * k);
        v.push_back(-0.3 * std::exp(-0.7 * t.back()));
        z.push_back(0.0);
    }
    const auto rate = fit_decay_rate(t, v, 0.0, 5.0);
    ASSERT_TRUE(rate.has_value());
    EXPECT_NEAR(*rate, 0.7, 1e-12);
    EXPECT_FALSE(fit_decay_rate(t, z, 0.0, 5.0).has_value());
    EXPECT_FALSE(fit_decay_rate(t, v, 6.0, 9.0).has_value());
}
