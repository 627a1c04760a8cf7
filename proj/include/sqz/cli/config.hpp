#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sqz/bath.hpp"
#include "sqz/gaugeflow.hpp"

namespace sqz::cli {

enum class Mode { trajectory, figures, spectrum, steady, verify };

Mode parse_mode(const std::string& name);
std::string to_string(Mode mode);

struct InitialConfig {
    double mu_abs2 = 0.2;
    double mu_phase = std::numbers::pi / 3.0;
    double nu_abs2 = 0.8;
    double nu_phase = 0.0;

    InitialDecomposition decomposition() const;
    bool real_coherence() const;
};

struct GridConfig {
    double t_max = 30.0;
    double dt_out = 0.05;
    std::optional<double> dt_int; // default 1e-3 / max gamma
};

struct Tolerances {
    double oracle = 1e-7;         // sup trace distance analytic vs reference
    double trace = 1e-9;          // |trace - 1|
    double hermiticity = 1e-9;
    double min_eig = 1e-8;        // smallest eigenvalue must be >= -min_eig
    double identity = 1e-9;       // gauge trace identities
    double symmetry = 1e-9;       // <sy> == 0 for real initial coherences, theta = 0
    double construction = 1e-14;  // sandwich vs algebraic rate matrices
    double spectrum = 1e-10;      // relative, eigenvalues vs closed forms
    double steady = 1e-12;
    double asymptotic = 1e-3;     // trace distance to the limiting steady state at t_max
};

struct RunConfig {
    Mode mode = Mode::trajectory;
    BathSchedule schedule = exp_decay_squeezing(0.1, 0.1);
    InitialConfig initial;
    GridConfig grid;
    std::string output_dir = ".";
    Tolerances tolerances;
    std::vector<int> figure_ids{1, 2, 3, 4, 5, 6};
    bool svg = true;

    /// Throws InvalidInput on inconsistent settings.
    void validate() const;
    TimeGrid time_grid() const;
    double internal_step() const;
};

using Settings = std::map<std::string, std::string>;

/// Parses `key = value` lines; blank lines and `#` comments are ignored.
Settings parse_settings(const std::string& text);
Settings load_settings_file(const std::string& path);

/// Builds a configuration from defaults overlaid with settings. Unknown keys
/// and malformed values throw InvalidInput.
RunConfig make_config(Mode mode, const Settings& settings);

/// Canonical figure parameters: r = c1 e^{-0.1 t}, gamma = 1, theta = 0, with
/// c1 = 0.1, 0.1, 0.3, 0.3, 0.6, 0.6 for ids 1..6. Odd ids start from
/// mu = sqrt(0.2) e^{i pi/3}, nu = sqrt(0.8); even ids from real mu, nu.
struct FigureSpec {
    int id = 1;
    double c1 = 0.1;
    BathSchedule schedule;
    InitialConfig initial;
};

FigureSpec figure_spec(int id);

} // namespace sqz::cli
