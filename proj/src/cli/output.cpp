#include "sqz/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

namespace sqz::cli {

std::string num(double v) {
    if (v == 0.0) return "0"; // folds -0
    return fmt::format("{:.15g}", v);
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
    std::string out = kTrajectoryHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(r.t), num(r.gamma), num(r.r),
                           num(r.theta), num(r.n_param), num(r.m_param.real()), num(r.m_param.imag()),
                           num(r.analytic.x), num(r.analytic.y), num(r.analytic.z), num(r.reference.x),
                           num(r.reference.y), num(r.reference.z), num(r.trace_dist_ref), num(r.trace_err),
                           num(r.min_eig));
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    out << contents;
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

std::string line_chart_svg(const std::string& title, const std::vector<double>& x, const std::vector<ChartSeries>& series,
                           const std::string& x_label) {
    constexpr double width = 720, height = 440;
    constexpr double left = 70, right = 150, top = 40, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = x.empty() ? 0.0 : x.front();
    double x_max = x.empty() ? 1.0 : x.back();
    if (x_max <= x_min) x_max = x_min + 1.0;
    double y_min = -1.0, y_max = 1.0;
    for (const auto& s : series) {
        for (double v : s.values) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    auto px = [&](double v) { return left + (v - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double v) { return top + (y_max - v) / (y_max - y_min) * plot_h; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        width, height, width, height);
    svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
    svg += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       left + plot_w / 2, title);
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left,
                       top, plot_w, plot_h);

    for (int i = 0; i <= 6; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 6.0;
        svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#ddd\"/>\n",
                           px(xv), top, top + plot_h);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{:.4g}</text>\n", px(xv),
                           top + plot_h + 16, xv);
        const double yv = y_min + (y_max - y_min) * i / 6.0;
        svg += fmt::format("<line x1=\"{1:.2f}\" y1=\"{0:.2f}\" x2=\"{2:.2f}\" y2=\"{0:.2f}\" stroke=\"#ddd\"/>\n",
                           py(yv), left, left + plot_w);
        svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.3g}</text>\n", left - 6,
                           py(yv) + 4, yv);
    }
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", left + plot_w / 2, height - 18,
                       x_label);

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& line = series[s];
        std::string points;
        const std::size_t n = std::min(x.size(), line.values.size());
        for (std::size_t i = 0; i < n; ++i) {
            points += fmt::format("{}{:.2f},{:.2f}", i == 0 ? "" : " ", px(x[i]), py(line.values[i]));
        }
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", line.color,
                           points);
        const double ly = top + 16 + 20 * static_cast<double>(s);
        svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                           left + plot_w + 12, ly, left + plot_w + 36, line.color);
        svg += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", left + plot_w + 42, ly + 4, line.label);
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace sqz::cli
