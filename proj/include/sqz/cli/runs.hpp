#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqz/cli/config.hpp"
#include "sqz/cli/output.hpp"
#include "sqz/gaugeflow.hpp"

namespace sqz::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kInvalidConfig = 1, kNumericalFailure = 2 };

struct RunOutcome {
    int exit_code = kSuccess;
    std::string message;
    std::vector<std::string> files;
};

/// Analytic (gauge-flow) and reference (brute-force) solutions on one grid.
struct PairedRun {
    AnalyticRun analytic;
    Trajectory reference;
    std::vector<TrajectoryRow> rows;
};

PairedRun compute_paired(const BathSchedule& schedule, const InitialConfig& initial, const TimeGrid& grid,
                         double step);

/// First row violating the oracle, trace or positivity tolerance, described
/// with its time and the violated bound.
std::optional<std::string> first_violation(const std::vector<TrajectoryRow>& rows, const Tolerances& tol);

/// Early-time window used for fitted decay rates.
inline constexpr double kFitWindowStart = 0.0;
inline constexpr double kFitWindowEnd = 5.0;

struct FigureSummary {
    int id = 0;
    double c1 = 0.0;
    std::optional<double> rate_sx;
    std::optional<double> rate_sy;
};

FigureSummary summarize_figure(const FigureSpec& spec, const std::vector<TrajectoryRow>& rows);

RunOutcome run_trajectory(const RunConfig& cfg);
RunOutcome run_figures(const RunConfig& cfg);
RunOutcome run_spectrum(const RunConfig& cfg);
RunOutcome run_steady(const RunConfig& cfg);
RunOutcome run_verify(const RunConfig& cfg);

/// Runs cfg.mode, mapping InvalidInput to exit 1 and NumericalFailure to exit 2.
RunOutcome execute(const RunConfig& cfg);

/// Full front end: parses `argv`, runs, prints messages; returns the exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace sqz::cli
