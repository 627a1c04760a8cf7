#pragma once

#include <string>
#include <vector>

#include "sqz/bath.hpp"
#include "sqz/liouvillian.hpp"

namespace sqz::cli {

/// One output-grid row of a trajectory or figure run.
struct TrajectoryRow {
    double t = 0.0;
    double gamma = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double n_param = 0.0;
    Complex m_param{};
    Expectations analytic;
    Expectations reference;
    double trace_dist_ref = 0.0;
    double trace_err = 0.0;
    double min_eig = 0.0;
};

inline constexpr const char* kTrajectoryHeader =
    "t,gamma,r,theta,N,M_re,M_im,sx,sy,sz,sx_ref,sy_ref,sz_ref,trace_dist_ref,trace_err,min_eig";

/// Number formatted with 15 significant digits.
std::string num(double v);

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);

void write_text_file(const std::string& path, const std::string& contents);

struct ChartSeries {
    std::string label;
    std::string color;
    std::vector<double> values;
};

/// Self-contained SVG line chart of several series against a shared abscissa.
std::string line_chart_svg(const std::string& title, const std::vector<double>& x, const std::vector<ChartSeries>& series,
                           const std::string& x_label);

} // namespace sqz::cli
