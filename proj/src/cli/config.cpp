#include "sqz/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace sqz::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw InvalidInput(fmt::format("{}: expected a finite number, got '{}'", key, text));
    }
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw InvalidInput(fmt::format("{}: expected a boolean, got '{}'", key, text));
}

class SettingsReader {
public:
    explicit SettingsReader(const Settings& settings) : settings_(settings) {}

    std::optional<std::string> text(const std::string& key) {
        used_.insert(key);
        const auto it = settings_.find(key);
        if (it == settings_.end()) return std::nullopt;
        return it->second;
    }

    void number(const std::string& key, double& target) {
        if (const auto v = text(key)) target = parse_double(key, *v);
    }

    double required(const std::string& key) {
        const auto v = text(key);
        if (!v) throw InvalidInput(fmt::format("missing required setting '{}'", key));
        return parse_double(key, *v);
    }

    double optional_number(const std::string& key, double fallback) {
        const auto v = text(key);
        return v ? parse_double(key, *v) : fallback;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : settings_) {
            if (!used_.contains(key)) throw InvalidInput(fmt::format("unknown setting '{}'", key));
        }
    }

private:
    const Settings& settings_;
    std::set<std::string> used_;
};

std::string kind_name(const ScalarFunction& f) {
    static const char* names[] = {"const", "exp", "ramp", "sin"};
    return names[f.index()];
}

// Parameters of the default function carry over only while its kind is kept.
ScalarFunction read_function(SettingsReader& in, const std::string& prefix, const ScalarFunction& fallback) {
    const auto kind = in.text(prefix + ".kind").value_or(kind_name(fallback));
    const bool keep = kind == kind_name(fallback);
    auto param = [&](const std::string& name, double default_value, bool required) {
        const std::string key = prefix + "." + name;
        if (keep || !required) return in.optional_number(key, default_value);
        return in.required(key);
    };
    if (kind == "const") {
        const auto* d = std::get_if<fn::Constant>(&fallback);
        return fn::Constant{param("c", d ? d->c : 0.0, true)};
    }
    if (kind == "exp") {
        const auto* d = std::get_if<fn::ExpDecay>(&fallback);
        return fn::ExpDecay{param("c1", d ? d->c1 : 0.0, true), param("c2", d ? d->c2 : 0.0, true)};
    }
    if (kind == "ramp") {
        const auto* d = std::get_if<fn::Ramp>(&fallback);
        return fn::Ramp{param("a", d ? d->a : 0.0, true), param("b", d ? d->b : 0.0, true)};
    }
    if (kind == "sin") {
        const auto* d = std::get_if<fn::Sinusoid>(&fallback);
        return fn::Sinusoid{param("a", d ? d->a : 0.0, true), param("b", d ? d->b : 0.0, true),
                            param("omega", d ? d->omega : 0.0, true), param("phase", d ? d->phase : 0.0, false)};
    }
    throw InvalidInput(fmt::format("{}.kind: expected const|exp|ramp|sin, got '{}'", prefix, kind));
}

std::vector<int> parse_ids(const std::string& key, const std::string& text) {
    std::vector<int> ids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const double v = parse_double(key, item);
        if (v != std::floor(v) || v < 1 || v > 6) {
            throw InvalidInput(fmt::format("{}: figure ids must be integers in 1..6, got '{}'", key, item));
        }
        ids.push_back(static_cast<int>(v));
    }
    if (ids.empty()) throw InvalidInput(fmt::format("{}: no figure ids given", key));
    return ids;
}

} // namespace

Mode parse_mode(const std::string& name) {
    if (name == "trajectory") return Mode::trajectory;
    if (name == "figures") return Mode::figures;
    if (name == "spectrum") return Mode::spectrum;
    if (name == "steady") return Mode::steady;
    if (name == "verify") return Mode::verify;
    throw InvalidInput(fmt::format("unknown mode '{}'", name));
}

std::string to_string(Mode mode) {
    switch (mode) {
    case Mode::trajectory: return "trajectory";
    case Mode::figures: return "figures";
    case Mode::spectrum: return "spectrum";
    case Mode::steady: return "steady";
    case Mode::verify: return "verify";
    }
    return "?";
}

InitialDecomposition InitialConfig::decomposition() const {
    return InitialDecomposition::from_polar(mu_abs2, mu_phase, nu_abs2, nu_phase);
}

bool InitialConfig::real_coherence() const {
    const Complex coherence = decomposition().lambda(1, -1);
    return std::abs(coherence.imag()) <= 1e-15 * std::max(1.0, std::abs(coherence));
}

void RunConfig::validate() const {
    if (std::abs(initial.mu_abs2 + initial.nu_abs2 - 1.0) > 1e-9) {
        throw InvalidInput(fmt::format("initial.mu_abs2 + initial.nu_abs2 = {} (expected 1)",
                                       initial.mu_abs2 + initial.nu_abs2));
    }
    if (initial.mu_abs2 < 0.0 || initial.nu_abs2 < 0.0) {
        throw InvalidInput("initial.mu_abs2 and initial.nu_abs2 must be non-negative");
    }
    if (!(grid.t_max > 0.0)) throw InvalidInput("grid.t_max must be > 0");
    if (!(grid.dt_out > 0.0)) throw InvalidInput("grid.dt_out must be > 0");
    if (grid.dt_int && !(*grid.dt_int > 0.0 && *grid.dt_int <= grid.dt_out * (1.0 + 1e-12))) {
        throw InvalidInput("grid.dt_int must be > 0 and <= grid.dt_out");
    }
    const TimeGrid g = time_grid();
    schedule.validate_on_grid(g.t_max(), g.dt_out());
    for (int id : figure_ids) {
        if (id < 1 || id > 6) throw InvalidInput(fmt::format("figure id {} outside 1..6", id));
    }
}

TimeGrid RunConfig::time_grid() const { return TimeGrid(grid.t_max, grid.dt_out); }

double RunConfig::internal_step() const {
    return grid.dt_int ? *grid.dt_int : default_internal_step(schedule, time_grid());
}

Settings parse_settings(const std::string& text) {
    Settings out;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput(fmt::format("config line {}: expected key=value, got '{}'", line_no, line));
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw InvalidInput(fmt::format("config line {}: empty key", line_no));
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings load_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput(fmt::format("cannot read config file '{}'", path));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_settings(buffer.str());
}

RunConfig make_config(Mode mode, const Settings& settings) {
    RunConfig cfg;
    cfg.mode = mode;
    SettingsReader in(settings);

    const BathSchedule defaults = cfg.schedule;
    cfg.schedule.gamma_fn = read_function(in, "schedule.gamma", defaults.gamma_fn);
    cfg.schedule.r_fn = read_function(in, "schedule.r", defaults.r_fn);
    cfg.schedule.theta_fn = read_function(in, "schedule.theta", defaults.theta_fn);
    const std::string bath_mode = in.text("schedule.mode").value_or("ideal");
    if (bath_mode == "thermal") {
        cfg.schedule.mode = ThermalOverride{in.required("schedule.nbar")};
    } else if (bath_mode == "ideal") {
        if (in.text("schedule.nbar")) throw InvalidInput("schedule.nbar is only valid with schedule.mode=thermal");
    } else {
        throw InvalidInput(fmt::format("schedule.mode: expected ideal|thermal, got '{}'", bath_mode));
    }

    in.number("initial.mu_abs2", cfg.initial.mu_abs2);
    in.number("initial.mu_phase", cfg.initial.mu_phase);
    in.number("initial.nu_abs2", cfg.initial.nu_abs2);
    in.number("initial.nu_phase", cfg.initial.nu_phase);

    in.number("grid.t_max", cfg.grid.t_max);
    in.number("grid.dt_out", cfg.grid.dt_out);
    if (const auto v = in.text("grid.dt_int")) cfg.grid.dt_int = parse_double("grid.dt_int", *v);

    if (const auto v = in.text("output.dir")) cfg.output_dir = *v;

    in.number("tolerances.oracle", cfg.tolerances.oracle);
    in.number("tolerances.trace", cfg.tolerances.trace);
    in.number("tolerances.hermiticity", cfg.tolerances.hermiticity);
    in.number("tolerances.min_eig", cfg.tolerances.min_eig);
    in.number("tolerances.identity", cfg.tolerances.identity);
    in.number("tolerances.symmetry", cfg.tolerances.symmetry);
    in.number("tolerances.construction", cfg.tolerances.construction);
    in.number("tolerances.spectrum", cfg.tolerances.spectrum);
    in.number("tolerances.steady", cfg.tolerances.steady);
    in.number("tolerances.asymptotic", cfg.tolerances.asymptotic);

    if (const auto v = in.text("figures.ids")) cfg.figure_ids = parse_ids("figures.ids", *v);
    if (const auto v = in.text("figures.svg")) cfg.svg = parse_bool("figures.svg", *v);

    in.reject_unknown();
    cfg.validate();
    return cfg;
}

FigureSpec figure_spec(int id) {
    if (id < 1 || id > 6) throw InvalidInput(fmt::format("figure id {} outside 1..6", id));
    static constexpr double amplitudes[] = {0.1, 0.1, 0.3, 0.3, 0.6, 0.6};
    FigureSpec spec;
    spec.id = id;
    spec.c1 = amplitudes[id - 1];
    spec.schedule = exp_decay_squeezing(spec.c1, 0.1);
    spec.initial.mu_abs2 = 0.2;
    spec.initial.nu_abs2 = 0.8;
    // nu carries e^{2 pi i} = 1 in the odd figures.
    spec.initial.nu_phase = 0.0;
    spec.initial.mu_phase = id % 2 == 1 ? std::numbers::pi / 3.0 : 0.0;
    return spec;
}

} // namespace sqz::cli
