#include "sqz/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <fmt/format.h>

#include "sqz/algebra.hpp"
#include "sqz/analysis.hpp"
#include "sqz/cli/runs.hpp"
#include "sqz/spectral.hpp"

namespace sqz::cli {

namespace {

CheckResult pass_if(std::string name, bool ok, std::string detail) {
    return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

CheckResult skipped(std::string name, std::string why) { return {std::move(name), CheckStatus::skipped, std::move(why)}; }

const char* status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "SKIP";
    }
    return "?";
}

CheckResult check_commutators() {
    const GeneratorSet& g = composite_generators();
    int failures = 0;
    auto expect = [&failures](const Mat4<int>& lhs, const Mat4<int>& rhs) {
        if (lhs != rhs) ++failures;
    };
    expect(commutator(g.j0, g.j_plus), 2 * g.j_plus);
    expect(commutator(g.j0, g.j_minus), -2 * g.j_minus);
    expect(commutator(g.j_plus, g.j_minus), g.j0);
    expect(commutator(g.k0, g.k_plus), 2 * g.k_plus);
    expect(commutator(g.k0, g.k_minus), -2 * g.k_minus);
    expect(commutator(g.k_plus, g.k_minus), g.k0);
    for (const auto* j : {&g.j0, &g.j_plus, &g.j_minus}) {
        for (const auto* k : {&g.k0, &g.k_plus, &g.k_minus}) expect(commutator(*j, *k), Mat4<int>::Zero());
    }

    const std::array<Mat2<int>, 3> ops{pauli::sigma_z(), pauli::sigma_plus(), pauli::sigma_minus()};
    std::array<Mat4<int>, 3> r, l;
    for (int i = 0; i < 3; ++i) {
        r[i] = lift_left<int>(ops[i]);
        l[i] = lift_right<int>(ops[i]);
    }
    expect(commutator(r[0], r[1]), 2 * r[1]);
    expect(commutator(r[0], r[2]), -2 * r[2]);
    expect(commutator(r[1], r[2]), r[0]);
    expect(commutator(l[0], l[1]), -2 * l[1]);
    expect(commutator(l[0], l[2]), 2 * l[2]);
    expect(commutator(l[1], l[2]), -l[0]);
    for (const auto& a : r) {
        for (const auto& b : l) expect(commutator(a, b), Mat4<int>::Zero());
    }
    expect(g.j_plus.transpose(), g.j_minus);
    expect(g.k_plus.transpose(), g.k_minus);
    expect(g.j0.transpose(), g.j0);
    return pass_if("algebra_commutators", failures == 0, fmt::format("{} of 36 integer identities violated", failures));
}

CheckResult check_basis_actions() {
    const GeneratorSet& g = composite_generators();
    // (generator, shift of s, shift of s', selector) per the |s><s'| action table.
    struct Action {
        const Mat4<int>* op;
        int ds, dsp;
        int need_s, need_sp; // 0 means unconstrained (diagonal weight instead)
        int weight_sign;     // J0: +1 -> (s+s')/2, K0: -1 -> (s-s')/2
    };
    const std::array<Action, 6> table{{{&g.j0, 0, 0, 0, 0, +1},
                                       {&g.j_plus, 2, 2, -1, -1, 0},
                                       {&g.j_minus, -2, -2, 1, 1, 0},
                                       {&g.k0, 0, 0, 0, 0, -1},
                                       {&g.k_plus, 2, -2, -1, 1, 0},
                                       {&g.k_minus, -2, 2, 1, -1, 0}}};
    int failures = 0;
    for (const auto& a : table) {
        for (int k = 0; k < 4; ++k) {
            const int s = kBasisLabels[k][0];
            const int sp = kBasisLabels[k][1];
            Eigen::Vector4i expected = Eigen::Vector4i::Zero();
            if (a.weight_sign != 0) {
                expected(k) = (s + a.weight_sign * sp) / 2;
            } else if (s == a.need_s && sp == a.need_sp) {
                expected(vec_index(s + a.ds, sp + a.dsp)) = 1;
            }
            const Eigen::Vector4i actual = a.op->col(k);
            if (actual != expected) ++failures;
        }
    }
    return pass_if("algebra_basis_actions", failures == 0, fmt::format("{} of 24 generator actions differ", failures));
}

template <class F>
void for_each_sample(const TimeGrid& grid, F&& f) {
    for (std::size_t k = 0; k < grid.size(); ++k) f(grid.at(k));
}

} // namespace

const CheckResult* VerifyReport::first_failure() const {
    for (const auto& c : checks) {
        if (c.status == CheckStatus::fail) return &c;
    }
    return nullptr;
}

std::string VerifyReport::text() const {
    std::string out = "verification report\n";
    for (const auto& c : checks) out += fmt::format("[{}] {:<28} {}\n", status_name(c.status), c.name, c.detail);
    const CheckResult* f = first_failure();
    out += f ? fmt::format("result: FAIL (first failing check: {})\n", f->name) : "result: PASS\n";
    return out;
}

VerifyReport verify_checks(const RunConfig& cfg) {
    VerifyReport report;
    auto& checks = report.checks;
    const Tolerances& tol = cfg.tolerances;
    const TimeGrid grid = cfg.time_grid();
    const bool thermal = cfg.schedule.thermal();

    checks.push_back(check_commutators());
    checks.push_back(check_basis_actions());

    {
        double worst = 0.0;
        for (int ig = 0; ig < 10; ++ig) {
            for (int ir = 0; ir < 10; ++ir) {
                for (int it = 0; it < 8; ++it) {
                    const auto [n, m] = bath_params(0.15 * ir, -3.0 + 0.8 * it);
                    const BathPoint p{0.1 + 0.5 * ig, n, m};
                    worst = std::max(worst, (build_rate_operator(p, BuildMethod::sandwich).entries -
                                             build_rate_operator(p, BuildMethod::algebraic).entries)
                                                .cwiseAbs()
                                                .maxCoeff());
                }
            }
        }
        for_each_sample(grid, [&](double t) {
            const BathPoint p = schedule_eval(cfg.schedule, t);
            worst = std::max(worst, (build_rate_operator(p, BuildMethod::sandwich).entries -
                                     build_rate_operator(p, BuildMethod::algebraic).entries)
                                        .cwiseAbs()
                                        .maxCoeff());
        });
        checks.push_back(pass_if("operator_construction", worst <= tol.construction,
                                 fmt::format("max |sandwich - algebraic| = {:.3e} (tol {:.1e})", worst, tol.construction)));
    }

    {
        double worst_rel = 0.0;
        double max_real = -1.0;
        for_each_sample(grid, [&](double t) {
            const BathPoint p = schedule_eval(cfg.schedule, t);
            const auto eig = spectrum(build_rate_operator(p));
            const auto formula = spectrum_formula(p);
            const double scale = p.gamma * (2.0 * p.n_param + 1.0);
            for (int i = 0; i < 4; ++i) {
                const double denom = std::abs(formula[i]) > 0.0 ? std::abs(formula[i]) : std::max(scale, 1e-300);
                worst_rel = std::max(worst_rel, std::abs(eig[i] - formula[i]) / denom);
                max_real = std::max(max_real, eig[i].real());
            }
        });
        checks.push_back(pass_if("spectrum_formulas", worst_rel <= tol.spectrum && max_real <= 1e-12,
                                 fmt::format("max relative deviation {:.3e} (tol {:.1e}), max Re(beta) {:.3e}",
                                             worst_rel, tol.spectrum, max_real)));
    }

    {
        double worst = 0.0;
        for_each_sample(grid, [&](double t) {
            const BathPoint p = schedule_eval(cfg.schedule, t);
            const DensityMatrix rho = steady_state(build_rate_operator(p));
            worst = std::max(worst, (rho - thermal_like_steady_state(p.n_param)).cwiseAbs().maxCoeff());
        });
        checks.push_back(pass_if("steady_state", worst <= tol.steady,
                                 fmt::format("max |nullspace - closed form| = {:.3e} (tol {:.1e})", worst, tol.steady)));
    }

    {
        double worst_alpha = 0.0;
        double worst_eta = 0.0;
        for_each_sample(grid, [&](double t) {
            const BathPoint p = schedule_eval(cfg.schedule, t);
            const double theta = evaluate(cfg.schedule.theta_fn, t);
            for (const auto& b : solve_transformation_conditions(p.n_param, theta)) {
                const auto res = condition_residuals(p.n_param, p.m_param, b);
                worst_alpha = std::max({worst_alpha, res[0], res[1]});
                worst_eta = std::max({worst_eta, res[2], res[3]});
            }
        });
        checks.push_back(pass_if("alpha_branch_conditions", worst_alpha <= 1e-12,
                                 fmt::format("max residual {:.3e} (tol 1.0e-12)", worst_alpha)));
        if (thermal) {
            checks.push_back(skipped("eta_branch_conditions", "thermal override: M = 0, K sector inert"));
        } else {
            checks.push_back(pass_if("eta_branch_conditions", worst_eta <= 1e-12,
                                     fmt::format("max residual {:.3e} (tol 1.0e-12)", worst_eta)));
        }
        const double candidate = std::abs(alpha_condition_residual(1.0, 1.0 / 3.0));
        const double corrected = std::abs(alpha_condition_residual(1.0, 0.5));
        checks.push_back(pass_if("alpha_root_adjudication", candidate > 0.1 && corrected <= 1e-15,
                                 fmt::format("N=1: residual of N/(2N+1) = {:.6f}, of N/(N+1) = {:.3e}", candidate,
                                             corrected)));
    }

    {
        double worst_beta = 0.0;
        double worst_gram = 0.0;
        double worst_eigvec = 0.0;
        double worst_zero = 0.0;
        int zero_count_errors = 0;
        for_each_sample(grid, [&](double t) {
            const BathPoint p = schedule_eval(cfg.schedule, t);
            const double theta = evaluate(cfg.schedule.theta_fn, t);
            const RateMatrix rate = build_rate_operator(p);
            const auto eig = spectrum(rate);
            const double scale = std::max(1e-300, p.gamma * (2.0 * p.n_param + 1.0));
            for (const auto& b : solve_transformation_conditions(p.n_param, theta)) {
                const auto modes = eigen_modes(p.gamma, p.n_param, p.m_param, b);
                std::array<Complex, 4> betas;
                int zeros = 0;
                for (int i = 0; i < 4; ++i) {
                    betas[i] = modes[i].beta;
                    const Vec4 v = vectorize<Complex>(modes[i].mode);
                    worst_eigvec = std::max(worst_eigvec, (rate.entries * v - modes[i].beta * v).norm() /
                                                              (scale * std::max(1.0, v.norm())));
                    for (int j = 0; j < 4; ++j) {
                        const Complex expected = i == j ? 1.0 : 0.0;
                        worst_gram = std::max(worst_gram, std::abs(hs_inner(modes[i].dual, modes[j].mode) - expected));
                    }
                    if (std::abs(modes[i].beta) <= 1e-12 * scale) {
                        ++zeros;
                        const DensityMatrix normalized = modes[i].mode / modes[i].mode.trace();
                        worst_zero = std::max(
                            worst_zero, (normalized - thermal_like_steady_state(p.n_param)).cwiseAbs().maxCoeff());
                    }
                }
                if (zeros != 1) ++zero_count_errors;
                std::sort(betas.begin(), betas.end(), [](Complex a, Complex c) { return a.real() > c.real(); });
                for (int i = 0; i < 4; ++i) worst_beta = std::max(worst_beta, std::abs(betas[i] - eig[i]) / scale);
            }
        });
        const bool ok = worst_beta <= 1e-10 && worst_gram <= 1e-10 && worst_eigvec <= 1e-10 && worst_zero <= 1e-12 &&
                        zero_count_errors == 0;
        checks.push_back(pass_if(
            "eigenmodes_biorthogonality", ok,
            fmt::format("beta vs spectrum {:.3e}, Gamma v - beta v {:.3e}, Gram - I {:.3e}, zero mode {:.3e}, "
                        "zero-mode count errors {}",
                        worst_beta, worst_eigvec, worst_gram, worst_zero, zero_count_errors)));
    }

    const PairedRun run = compute_paired(cfg.schedule, cfg.initial, grid, cfg.internal_step());

    {
        double worst = 0.0;
        double at = 0.0;
        for (const auto& r : run.rows) {
            if (!(r.trace_dist_ref <= worst)) {
                worst = r.trace_dist_ref;
                at = r.t;
            }
        }
        checks.push_back(pass_if("oracle_agreement", worst <= tol.oracle,
                                 fmt::format("sup trace distance {:.3e} at t = {} (tol {:.1e}, step {})", worst, num(at),
                                             tol.oracle, num(cfg.internal_step()))));
    }

    {
        double trace = 0.0, herm = 0.0, min_eig = 1.0;
        for (const Trajectory* tr : {&run.analytic.trajectory, &run.reference}) {
            for (const auto& d : tr->diagnostics) {
                trace = std::max(trace, std::abs(d.trace_error));
                herm = std::max(herm, d.hermiticity_defect);
                min_eig = std::min(min_eig, d.min_eigenvalue);
            }
        }
        checks.push_back(pass_if("conservation_positivity",
                                 trace <= tol.trace && herm <= tol.hermiticity && min_eig >= -tol.min_eig,
                                 fmt::format("max |trace-1| {:.3e}, max Hermiticity defect {:.3e}, min eigenvalue {:.3e}",
                                             trace, herm, min_eig)));
    }

    {
        double worst = 0.0;
        for (const auto& g : run.analytic.gauge) {
            const auto res = trace_identity_residuals(g);
            worst = std::max({worst, res[0], res[1]});
        }
        checks.push_back(pass_if("gauge_trace_identities", worst <= tol.identity,
                                 fmt::format("max residual {:.3e} (tol {:.1e})", worst, tol.identity)));
    }

    bool theta_zero = true;
    for_each_sample(grid, [&](double t) { theta_zero = theta_zero && evaluate(cfg.schedule.theta_fn, t) == 0.0; });

    {
        if (!theta_zero || !cfg.initial.real_coherence()) {
            checks.push_back(skipped("coherence_symmetry", "needs theta = 0 and real initial coherence"));
        } else {
            double worst = 0.0;
            for (const auto& r : run.rows) worst = std::max({worst, std::abs(r.analytic.y), std::abs(r.reference.y)});
            checks.push_back(pass_if("coherence_symmetry", worst <= tol.symmetry,
                                     fmt::format("max |<sy>| = {:.3e} (tol {:.1e})", worst, tol.symmetry)));
        }
    }

    {
        const BathPoint p0 = schedule_eval(cfg.schedule, 0.0);
        const Expectations e0 = run.rows.front().analytic;
        if (thermal) {
            checks.push_back(skipped("decay_asymmetry", "thermal override: no phase-sensitive reservoir"));
        } else if (!theta_zero) {
            checks.push_back(skipped("decay_asymmetry", "needs theta = 0 (sx and sy are not the principal axes otherwise)"));
        } else if (std::abs(p0.m_param) == 0.0 || std::abs(e0.x) < 1e-6 || std::abs(e0.y) < 1e-6) {
            checks.push_back(skipped("decay_asymmetry", "needs M(0) != 0 and nonzero initial <sx>, <sy>"));
        } else {
            std::vector<double> t, x, y;
            for (const auto& r : run.rows) {
                t.push_back(r.t);
                x.push_back(r.analytic.x);
                y.push_back(r.analytic.y);
            }
            const double hi = std::min(kFitWindowEnd, grid.t_max());
            const auto rx = fit_decay_rate(t, x, kFitWindowStart, hi);
            const auto ry = fit_decay_rate(t, y, kFitWindowStart, hi);
            const bool ok = rx && ry && *ry < *rx;
            checks.push_back(pass_if("decay_asymmetry", ok,
                                     fmt::format("fitted rates on [0, {}]: <sx> {:.6f}, <sy> {:.6f}", num(hi),
                                                 rx.value_or(NAN), ry.value_or(NAN))));
        }
    }

    try {
        const AsymptoticLimits lim = asymptotic_gauge_limits(cfg.schedule);
        const Trajectory& a = run.analytic.trajectory;
        const std::size_t burn_in = a.size() / 2;
        bool monotone = true;
        double previous = INFINITY;
        for (std::size_t k = burn_in; k < a.size(); k += std::max<std::size_t>(1, a.size() / 40)) {
            const double d = trace_distance(a.states[k], lim.steady);
            // Slack for the round-off floor reached once the state has converged.
            if (d > previous * (1.0 + 1e-9) + 1e-10) monotone = false;
            previous = d;
        }
        const double start_distance = trace_distance(a.states[burn_in], lim.steady);
        const double final_distance = trace_distance(a.states.back(), lim.steady);
        // Either already at the limit, or still visibly closing in on it.
        const bool approaching = final_distance <= tol.asymptotic || final_distance < 0.99 * start_distance;
        const double alpha_start = std::abs(run.analytic.gauge[burn_in].alpha_plus - lim.alpha_plus);
        const double alpha_final = std::abs(run.analytic.gauge.back().alpha_plus - lim.alpha_plus);
        const bool alpha_ok = alpha_final <= tol.asymptotic || alpha_final <= alpha_start;
        checks.push_back(pass_if(
            "asymptotic_approach", monotone && approaching && alpha_ok,
            fmt::format("distance to limiting steady state {:.3e} at t = {} -> {:.3e} at t = {} (tol {:.1e}), "
                        "monotone tail: {}, |a+ - N/(N+1)| {:.3e} -> {:.3e}",
                        start_distance, num(a.times[burn_in]), final_distance, num(grid.t_max()), tol.asymptotic,
                        monotone ? "yes" : "no", alpha_start, alpha_final)));
    } catch (const UnsupportedSchedule& e) {
        checks.push_back(skipped("asymptotic_approach", e.what()));
    }

    return report;
}

RunOutcome run_verify(const RunConfig& cfg) {
    const VerifyReport report = verify_checks(cfg);
    RunOutcome outcome;
    const std::string path = (std::filesystem::path(cfg.output_dir) / "verify_report.txt").string();
    const std::string text = report.text();
    write_text_file(path, text);
    outcome.files.push_back(path);
    if (const CheckResult* f = report.first_failure()) {
        outcome.exit_code = kNumericalFailure;
        outcome.message = fmt::format("{}verify: check '{}' failed: {}", text, f->name, f->detail);
        return outcome;
    }
    outcome.message = text;
    return outcome;
}

} // namespace sqz::cli
