#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "sqz/cli/config.hpp"
#include "sqz/cli/runs.hpp"
#include "sqz/cli/verify.hpp"

using namespace sqz;
using namespace sqz::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("sqz_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(SQZ_RUN_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST(Settings, ParsesKeyValueLines) {
    const Settings s = parse_settings("# comment\n schedule.r.kind = exp \n\nschedule.r.c1=0.3 # trailing\n");
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.at("schedule.r.kind"), "exp");
    EXPECT_EQ(s.at("schedule.r.c1"), "0.3");
    EXPECT_THROW(parse_settings("no equals sign\n"), InvalidInput);
}

TEST(Config, BuildsSchedulesAndInitialState) {
    const RunConfig cfg = make_config(Mode::trajectory, {{"schedule.r.kind", "const"},
                                                         {"schedule.r.c", "0.6"},
                                                         {"schedule.theta.kind", "const"},
                                                         {"schedule.theta.c", "0.5"},
                                                         {"initial.mu_abs2", "1"},
                                                         {"initial.nu_abs2", "0"},
                                                         {"grid.t_max", "10"},
                                                         {"grid.dt_int", "0.0005"}});
    const BathPoint p = schedule_eval(cfg.schedule, 3.0);
    const auto [n, m] = bath_params(0.6, 0.5);
    EXPECT_EQ(p.n_param, n);
    EXPECT_EQ(p.m_param, m);
    EXPECT_EQ(cfg.time_grid().size(), 201u);
    EXPECT_EQ(cfg.internal_step(), 0.0005);
}

TEST(Config, RejectsInvalidInput) {
    EXPECT_THROW(make_config(Mode::trajectory, {{"initial.mu_abs2", "0.5"}}), InvalidInput);
    EXPECT_THROW(make_config(Mode::trajectory, {{"grid.t_max", "0"}}), InvalidInput);
    EXPECT_THROW(make_config(Mode::trajectory, {{"grid.dt_int", "0.1"}}), InvalidInput);
    EXPECT_THROW(make_config(Mode::trajectory, {{"no.such.key", "1"}}), InvalidInput);
    EXPECT_THROW(make_config(Mode::trajectory, {{"grid.t_max", "abc"}}), InvalidInput);
    EXPECT_THROW(make_config(Mode::trajectory, {{"schedule.r.kind", "ramp"}}), InvalidInput);
    EXPECT_THROW(make_config(Mode::figures, {{"figures.ids", "1,7"}}), InvalidInput);
    EXPECT_THROW(parse_mode("plot"), InvalidInput);
}

TEST(Config, FigureParameters) {
    const double c1[] = {0.1, 0.1, 0.3, 0.3, 0.6, 0.6};
    for (int id = 1; id <= 6; ++id) {
        const FigureSpec f = figure_spec(id);
        EXPECT_EQ(f.c1, c1[id - 1]);
        const BathPoint p0 = schedule_eval(f.schedule, 0.0);
        EXPECT_EQ(p0.n_param, bath_params(c1[id - 1], 0.0).first);
        EXPECT_EQ(f.initial.real_coherence(), id % 2 == 0);
    }
    EXPECT_THROW(figure_spec(0), InvalidInput);
}

TEST(Trajectory, FigureOneCsv) {
    const fs::path dir = scratch("fig1");
    RunConfig cfg;
    cfg.output_dir = dir.string();
    const RunOutcome out = run_trajectory(cfg);
    ASSERT_EQ(out.exit_code, kSuccess) << out.message;
    std::string header;
    const auto rows = read_csv(dir / "trajectory.csv", &header);
    EXPECT_EQ(header, kTrajectoryHeader);
    ASSERT_EQ(rows.size(), 601u);
    EXPECT_NEAR(rows.front()[9], -0.6, 1e-15);
    EXPECT_NEAR(rows.back()[9], -1.0, 1e-3);
    EXPECT_LT(rows.back()[9], rows[300][9]);
    for (const auto& r : rows) {
        EXPECT_LE(r[13], 1e-7);
        EXPECT_LE(std::abs(r[14]), 1e-9);
        EXPECT_GE(r[15], -1e-8);
    }
}

TEST(Trajectory, VacuumDecay) {
    const fs::path dir = scratch("vacuum");
    RunConfig cfg = make_config(Mode::trajectory, {{"schedule.r.kind", "const"},
                                                   {"schedule.r.c", "0"},
                                                   {"initial.mu_abs2", "1"},
                                                   {"initial.nu_abs2", "0"},
                                                   {"output.dir", dir.string()}});
    ASSERT_EQ(run_trajectory(cfg).exit_code, kSuccess);
    for (const auto& r : read_csv(dir / "trajectory.csv")) EXPECT_NEAR(r[9], 2.0 * std::exp(-r[0]) - 1.0, 1e-8);
}

TEST(Trajectory, CoarseStepFailsWithTime) {
    RunConfig cfg;
    cfg.output_dir = scratch("coarse").string();
    cfg.grid.dt_out = 0.5;
    cfg.grid.dt_int = 0.5;
    const RunOutcome out = run_trajectory(cfg);
    EXPECT_EQ(out.exit_code, kNumericalFailure);
    EXPECT_NE(out.message.find("t = "), std::string::npos) << out.message;
}

TEST(Figures, SymmetryAndRates) {
    const fs::path dir = scratch("figs");
    RunConfig cfg = make_config(Mode::figures, {{"output.dir", dir.string()}, {"figures.ids", "1,2,5"}});
    const RunOutcome out = execute(cfg);
    ASSERT_EQ(out.exit_code, kSuccess) << out.message;
    EXPECT_TRUE(fs::exists(dir / "fig1.svg"));
    EXPECT_TRUE(fs::exists(dir / "figures_summary.csv"));

    for (const auto& r : read_csv(dir / "fig2.csv")) EXPECT_LE(std::abs(r[8]), 1e-9);

    const FigureSummary s1 = summarize_figure(figure_spec(1), [&] {
        RunConfig one = make_config(Mode::figures, {});
        return compute_paired(figure_spec(1).schedule, figure_spec(1).initial, one.time_grid(), one.internal_step()).rows;
    }());
    const FigureSummary s5 = summarize_figure(figure_spec(5), [&] {
        RunConfig one = make_config(Mode::figures, {});
        return compute_paired(figure_spec(5).schedule, figure_spec(5).initial, one.time_grid(), one.internal_step()).rows;
    }());
    ASSERT_TRUE(s1.rate_sx && s1.rate_sy && s5.rate_sx);
    EXPECT_GT(*s5.rate_sx, *s1.rate_sx);
    EXPECT_LT(*s1.rate_sy, *s1.rate_sx);
}

TEST(Verify, DefaultPasses) {
    RunConfig cfg = make_config(Mode::verify, {{"output.dir", scratch("verify").string()}});
    const VerifyReport report = verify_checks(cfg);
    EXPECT_EQ(report.first_failure(), nullptr) << report.text();
    EXPECT_NE(report.text().find("0.444444"), std::string::npos);
}

TEST(Verify, CoarseStepFailsOracleFirst) {
    RunConfig cfg = make_config(Mode::verify, {{"output.dir", scratch("verify_coarse").string()},
                                               {"grid.dt_out", "0.5"},
                                               {"grid.dt_int", "0.5"}});
    const RunOutcome out = run_verify(cfg);
    EXPECT_EQ(out.exit_code, kNumericalFailure);
    EXPECT_NE(out.message.find("oracle_agreement"), std::string::npos);
}

TEST(Verify, ThermalSkipsSqueezingChecks) {
    RunConfig cfg = make_config(Mode::verify, {{"output.dir", scratch("verify_thermal").string()},
                                               {"schedule.mode", "thermal"},
                                               {"schedule.nbar", "0.3"}});
    const VerifyReport report = verify_checks(cfg);
    EXPECT_EQ(report.first_failure(), nullptr) << report.text();
    int skipped = 0;
    for (const auto& c : report.checks) {
        if (c.name == "eta_branch_conditions" || c.name == "decay_asymmetry") {
            EXPECT_EQ(c.status, CheckStatus::skipped);
            ++skipped;
        }
    }
    EXPECT_EQ(skipped, 2);
}

TEST(Tool, ExitCodes) {
    const fs::path dir = scratch("tool");
    EXPECT_EQ(run_tool("spectrum --out " + dir.string()), 0);
    EXPECT_EQ(run_tool("trajectory --out " + dir.string() + " --initial.mu_abs2=0.5"), 1);
    EXPECT_EQ(run_tool("trajectory --out " + dir.string() + " --grid.dt_out 0.5 --grid.dt_int 0.5"), 2);
    EXPECT_EQ(run_tool("bogus"), 1);
    EXPECT_EQ(run_tool("trajectory --config " + (dir / "missing.cfg").string()), 1);
}

TEST(Tool, ConfigFileAndDeterminism) {
    const fs::path dir = scratch("determinism");
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "schedule.r.kind=exp\nschedule.r.c1=0.3\nschedule.r.c2=0.1\n"
               "initial.mu_abs2=0.2\ninitial.mu_phase=1.0471975511965976\ninitial.nu_abs2=0.8\n"
               "grid.t_max=10\ngrid.dt_out=0.05\ngrid.dt_int=0.001\n";
    }
    ASSERT_EQ(run_tool("trajectory --config " + (dir / "run.cfg").string() + " --out " + (dir / "a").string()), 0);
    ASSERT_EQ(run_tool("trajectory --config " + (dir / "run.cfg").string() + " --out " + (dir / "b").string()), 0);
    const std::string a = slurp(dir / "a" / "trajectory.csv");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir / "b" / "trajectory.csv"));
    EXPECT_EQ(read_csv(dir / "a" / "trajectory.csv").size(), 201u);
}
