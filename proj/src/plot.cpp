#include "fintstab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fintstab/csv.hpp"

namespace fintstab {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::vector<double> trajectory_column(const Trajectory& traj, const std::string& column) {
    std::vector<double> out;
    out.reserve(traj.samples.size());
    const std::size_t n = traj.initial_report.size();
    if (column == "norm_inf") {
        for (const auto& s : traj.samples) out.push_back(s.norm_inf);
    } else if (column == "norm_2") {
        for (const auto& s : traj.samples) out.push_back(s.norm_2);
    } else if (column == "alpha3") {
        for (const auto& s : traj.samples) out.push_back(s.alpha3);
    } else if (column == "alpha4") {
        for (const auto& s : traj.samples) out.push_back(s.alpha4);
    } else if (column.size() >= 2 && column[0] == 'e') {
        const std::size_t idx = std::stoul(column.substr(1));
        if (idx < 1 || idx > n) throw ConfigError("plot: no such component column: " + column);
        for (const auto& s : traj.samples) out.push_back(s.state[idx - 1]);
    } else {
        throw ConfigError("plot: unknown column: " + column);
    }
    return out;
}

std::string render_plot_svg(const Trajectory& traj, const std::vector<std::string>& columns,
                            const std::string& title) {
    if (traj.samples.empty()) throw IoError("plot: empty trajectory");
    if (columns.empty()) throw ConfigError("plot: no columns selected");

    const int width = 840, height = 520;
    const int ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = width - ml - mr, ph = height - mt - mb;

    std::vector<std::vector<double>> series;
    for (const auto& c : columns) series.push_back(trajectory_column(traj, c));

    const double t0 = traj.samples.front().t, t1 = traj.samples.back().t;
    double lo = series[0][0], hi = lo;
    for (const auto& s : series) {
        for (double v : s) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi - lo < 1e-12) {
        hi += 1.0;
        lo -= 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const auto sx = [&](double t) { return ml + (t - t0) / (t1 - t0) * pw; };
    const auto sy = [&](double v) { return mt + (hi - v) / (hi - lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    // axes with five ticks each
    svg << "<g stroke=\"#333\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
        << "\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
        << mt + ph << "\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double t = t0 + (t1 - t0) * k / 5.0;
        const double v = lo + (hi - lo) * k / 5.0;
        svg << "<line x1=\"" << fmt(sx(t)) << "\" y1=\"" << mt + ph << "\" x2=\"" << fmt(sx(t))
            << "\" y2=\"" << mt + ph + 5 << "\"/>\n";
        svg << "<text x=\"" << fmt(sx(t)) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">" << fmt(t) << "</text>\n";
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(sy(v)) << "\" x2=\"" << ml << "\" y2=\""
            << fmt(sy(v)) << "\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(sy(v) + 4)
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#333\">" << fmt(v) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">t</text>\n";
    svg << "</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        svg << "<polyline fill=\"none\" stroke=\"" << kColors[s % 6]
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < traj.samples.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(sx(traj.samples[i].t)) << ',' << fmt(sy(series[s][i]));
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 16 * static_cast<int>(s)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << kColors[s % 6] << "\">"
            << columns[s] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const Trajectory& traj, const std::vector<std::string>& columns,
               const std::string& path) {
    write_file(path, render_plot_svg(traj, columns, path.substr(path.find_last_of('/') + 1)));
}

}  // namespace fintstab
