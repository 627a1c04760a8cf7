#include "sqz/cli/runs.hpp"

#include <cmath>
#include <filesystem>
#include <future>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sqz/analysis.hpp"
#include "sqz/spectral.hpp"

namespace sqz::cli {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
}

std::vector<double> column(const std::vector<TrajectoryRow>& rows, double Expectations::*component) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.analytic.*component);
    return out;
}

std::string optional_num(const std::optional<double>& v) { return v ? num(*v) : "nan"; }

} // namespace

PairedRun compute_paired(const BathSchedule& schedule, const InitialConfig& initial, const TimeGrid& grid,
                         double step) {
    const InitialDecomposition init = initial.decomposition();
    PairedRun run;
    run.analytic = integrate_analytic(schedule, init, grid, step);
    run.reference = integrate_reference(schedule, init.density(), grid, step);

    const Trajectory& a = run.analytic.trajectory;
    run.rows.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double t = a.times[k];
        const BathPoint point = schedule_eval(schedule, t);
        TrajectoryRow row;
        row.t = t;
        row.gamma = point.gamma;
        row.r = evaluate(schedule.r_fn, t);
        row.theta = evaluate(schedule.theta_fn, t);
        row.n_param = point.n_param;
        row.m_param = point.m_param;
        row.analytic = a.expectations[k];
        row.reference = run.reference.expectations[k];
        row.trace_dist_ref = trace_distance(a.states[k], run.reference.states[k]);
        row.trace_err = a.diagnostics[k].trace_error;
        row.min_eig = a.diagnostics[k].min_eigenvalue;
        run.rows.push_back(row);
    }
    return run;
}

std::optional<std::string> first_violation(const std::vector<TrajectoryRow>& rows, const Tolerances& tol) {
    for (const auto& r : rows) {
        if (!(r.trace_dist_ref <= tol.oracle)) {
            return fmt::format("t = {}: trace distance to reference {:.3e} exceeds tolerance {:.1e}", num(r.t),
                               r.trace_dist_ref, tol.oracle);
        }
        if (!(std::abs(r.trace_err) <= tol.trace)) {
            return fmt::format("t = {}: trace error {:.3e} exceeds tolerance {:.1e}", num(r.t), r.trace_err,
                               tol.trace);
        }
        if (!(r.min_eig >= -tol.min_eig)) {
            return fmt::format("t = {}: minimum eigenvalue {:.3e} below -{:.1e}", num(r.t), r.min_eig, tol.min_eig);
        }
    }
    return std::nullopt;
}

FigureSummary summarize_figure(const FigureSpec& spec, const std::vector<TrajectoryRow>& rows) {
    std::vector<double> times;
    for (const auto& r : rows) times.push_back(r.t);
    const auto sx = column(rows, &Expectations::x);
    const auto sy = column(rows, &Expectations::y);
    return {spec.id, spec.c1, fit_decay_rate(times, sx, kFitWindowStart, kFitWindowEnd),
            fit_decay_rate(times, sy, kFitWindowStart, kFitWindowEnd, 1e-9)};
}

RunOutcome run_trajectory(const RunConfig& cfg) {
    const TimeGrid grid = cfg.time_grid();
    const PairedRun run = compute_paired(cfg.schedule, cfg.initial, grid, cfg.internal_step());
    RunOutcome outcome;
    const std::string path = out_path(cfg, "trajectory.csv");
    write_text_file(path, trajectory_csv(run.rows));
    outcome.files.push_back(path);
    if (const auto violation = first_violation(run.rows, cfg.tolerances)) {
        outcome.exit_code = kNumericalFailure;
        outcome.message = "trajectory: " + *violation;
        return outcome;
    }
    outcome.message = fmt::format("trajectory: wrote {} rows to {}", run.rows.size(), path);
    return outcome;
}

RunOutcome run_figures(const RunConfig& cfg) {
    const TimeGrid grid = cfg.time_grid();
    const double step = cfg.internal_step();

    struct FigureResult {
        FigureSpec spec;
        std::vector<TrajectoryRow> rows;
    };
    std::vector<std::future<FigureResult>> jobs;
    for (int id : cfg.figure_ids) {
        jobs.push_back(std::async(std::launch::async, [id, &grid, step] {
            FigureSpec spec = figure_spec(id);
            PairedRun run = compute_paired(spec.schedule, spec.initial, grid, step);
            return FigureResult{spec, std::move(run.rows)};
        }));
    }
    std::vector<FigureResult> results;
    for (auto& job : jobs) results.push_back(job.get());

    RunOutcome outcome;
    std::string summary = "figure,c1,rate_sx,rate_sy,rate_ratio\n";
    std::optional<std::string> failure;
    for (const auto& res : results) {
        const std::string csv = out_path(cfg, fmt::format("fig{}.csv", res.spec.id));
        write_text_file(csv, trajectory_csv(res.rows));
        outcome.files.push_back(csv);
        if (cfg.svg) {
            std::vector<double> times;
            for (const auto& r : res.rows) times.push_back(r.t);
            const std::string svg = out_path(cfg, fmt::format("fig{}.svg", res.spec.id));
            write_text_file(svg, line_chart_svg(fmt::format("Figure {}: r = {} exp(-0.1 t)", res.spec.id, res.spec.c1),
                                                times,
                                                {{"<sx>", "#1f77b4", column(res.rows, &Expectations::x)},
                                                 {"<sy>", "#d62728", column(res.rows, &Expectations::y)},
                                                 {"<sz>", "#2ca02c", column(res.rows, &Expectations::z)}},
                                                "t"));
            outcome.files.push_back(svg);
        }
        const FigureSummary s = summarize_figure(res.spec, res.rows);
        const std::optional<double> ratio =
            s.rate_sx && s.rate_sy ? std::optional<double>(*s.rate_sx / *s.rate_sy) : std::nullopt;
        summary += fmt::format("{},{},{},{},{}\n", s.id, num(s.c1), optional_num(s.rate_sx), optional_num(s.rate_sy),
                               optional_num(ratio));
        if (!failure) {
            if (auto v = first_violation(res.rows, cfg.tolerances)) failure = fmt::format("figure {}: {}", res.spec.id, *v);
        }
    }
    const std::string summary_path = out_path(cfg, "figures_summary.csv");
    write_text_file(summary_path, summary);
    outcome.files.push_back(summary_path);

    if (failure) {
        outcome.exit_code = kNumericalFailure;
        outcome.message = *failure;
        return outcome;
    }
    outcome.message = fmt::format("figures: wrote {} files to {}", outcome.files.size(), cfg.output_dir);
    return outcome;
}

RunOutcome run_spectrum(const RunConfig& cfg) {
    const TimeGrid grid = cfg.time_grid();
    std::string csv = "t,gamma,N,M_re,M_im,eig1_re,eig1_im,eig2_re,eig2_im,eig3_re,eig3_im,eig4_re,eig4_im,"
                      "rate_sx,rate_sy,rate_sz,max_formula_dev\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.at(k);
        const BathPoint p = schedule_eval(cfg.schedule, t);
        const auto eig = spectrum(build_rate_operator(p));
        const auto formula = spectrum_formula(p);
        double dev = 0.0;
        for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(eig[i] - formula[i]));
        const double m = std::abs(p.m_param);
        csv += fmt::format("{},{},{},{},{}", num(t), num(p.gamma), num(p.n_param), num(p.m_param.real()),
                           num(p.m_param.imag()));
        for (const auto& e : eig) csv += fmt::format(",{},{}", num(e.real()), num(e.imag()));
        csv += fmt::format(",{},{},{},{}\n", num(p.gamma * (p.n_param + m + 0.5)), num(p.gamma * (p.n_param - m + 0.5)),
                           num(p.gamma * (2.0 * p.n_param + 1.0)), num(dev));
    }
    RunOutcome outcome;
    const std::string path = out_path(cfg, "spectrum.csv");
    write_text_file(path, csv);
    outcome.files.push_back(path);
    outcome.message = fmt::format("spectrum: wrote {} rows to {}", grid.size(), path);
    return outcome;
}

RunOutcome run_steady(const RunConfig& cfg) {
    const TimeGrid grid = cfg.time_grid();
    std::string csv = "t,N,p_excited,p_ground,p_excited_formula,p_ground_formula,max_dev\n";
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.at(k);
        const BathPoint p = schedule_eval(cfg.schedule, t);
        const DensityMatrix rho = steady_state(build_rate_operator(p));
        const DensityMatrix formula = thermal_like_steady_state(p.n_param);
        const double dev = (rho - formula).cwiseAbs().maxCoeff();
        worst = std::max(worst, dev);
        csv += fmt::format("{},{},{},{},{},{},{}\n", num(t), num(p.n_param), num(rho(0, 0).real()),
                           num(rho(1, 1).real()), num(formula(0, 0).real()), num(formula(1, 1).real()), num(dev));
    }
    RunOutcome outcome;
    const std::string path = out_path(cfg, "steady.csv");
    write_text_file(path, csv);
    outcome.files.push_back(path);

    std::string limits;
    try {
        const AsymptoticLimits lim = asymptotic_gauge_limits(cfg.schedule);
        limits = fmt::format("gamma_inf = {}\nN_inf = {}\nalpha_plus_inf = {}\neta_plus_inf = {}\n"
                             "p_excited_inf = {}\np_ground_inf = {}\n",
                             num(lim.gamma), num(lim.n_param), num(lim.alpha_plus),
                             lim.eta_plus ? fmt::format("{} {:+}i", num(lim.eta_plus->real()), lim.eta_plus->imag())
                                          : std::string("frozen (squeezing vanishes asymptotically)"),
                             num(lim.steady(0, 0).real()), num(lim.steady(1, 1).real()));
    } catch (const UnsupportedSchedule& e) {
        limits = fmt::format("no asymptotic limit: {}\n", e.what());
    }
    const std::string limits_path = out_path(cfg, "steady_limits.txt");
    write_text_file(limits_path, limits);
    outcome.files.push_back(limits_path);

    if (!(worst <= cfg.tolerances.steady)) {
        outcome.exit_code = kNumericalFailure;
        outcome.message = fmt::format("steady: null-space state deviates from closed form by {:.3e} (tolerance {:.1e})",
                                      worst, cfg.tolerances.steady);
        return outcome;
    }
    outcome.message = fmt::format("steady: wrote {} rows to {}", grid.size(), path);
    return outcome;
}

RunOutcome execute(const RunConfig& cfg) {
    try {
        cfg.validate();
        switch (cfg.mode) {
        case Mode::trajectory: return run_trajectory(cfg);
        case Mode::figures: return run_figures(cfg);
        case Mode::spectrum: return run_spectrum(cfg);
        case Mode::steady: return run_steady(cfg);
        case Mode::verify: return run_verify(cfg);
        }
    } catch (const NumericalFailure& e) {
        return {kNumericalFailure, fmt::format("numerical failure: {}", e.what()), {}};
    } catch (const InvalidInput& e) {
        return {kInvalidConfig, fmt::format("invalid configuration: {}", e.what()), {}};
    } catch (const RangeError& e) {
        return {kInvalidConfig, fmt::format("invalid configuration: {}", e.what()), {}};
    }
    return {kInvalidConfig, "unknown mode", {}};
}

namespace {

// Collects `--key=value` and `--key value` pairs left over after CLI11 parsing.
Settings parse_overrides(const std::vector<std::string>& extras) {
    Settings out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& arg = extras[i];
        if (arg.rfind("--", 0) != 0 || arg.size() <= 2) {
            throw InvalidInput(fmt::format("unexpected argument '{}'", arg));
        }
        const std::string body = arg.substr(2);
        if (const auto eq = body.find('='); eq != std::string::npos) {
            out[body.substr(0, eq)] = body.substr(eq + 1);
        } else if (i + 1 < extras.size()) {
            out[body] = extras[++i];
        } else {
            throw InvalidInput(fmt::format("override '{}' has no value", arg));
        }
    }
    return out;
}

} // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-level atom in a time-dependent squeezed vacuum reservoir"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"trajectory", "analytic and reference trajectories to trajectory.csv"},
        {"figures", "reproduce the six figure runs (fig1..fig6 .csv/.svg)"},
        {"spectrum", "rate-operator spectrum along the schedule"},
        {"steady", "instantaneous and asymptotic steady states"},
        {"verify", "run the invariant suite and write verify_report.txt"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "key=value configuration file");
        sub->add_option("--out", out_dir, "output directory (same as output.dir)");
        sub->allow_extras();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidConfig;
    }

    CLI::App* chosen = app.get_subcommands().front();
    RunConfig cfg;
    try {
        Settings settings = config_path.empty() ? Settings{} : load_settings_file(config_path);
        for (auto& [key, value] : parse_overrides(chosen->remaining())) settings[key] = value;
        if (!out_dir.empty()) settings["output.dir"] = out_dir;
        cfg = make_config(parse_mode(chosen->get_name()), settings);
    } catch (const InvalidInput& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    }

    const RunOutcome outcome = execute(cfg);
    (outcome.exit_code == kSuccess ? out : err) << outcome.message << '\n';
    return outcome.exit_code;
}

} // namespace sqz::cli
