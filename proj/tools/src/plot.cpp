#include "qednp_cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qednp/errors.hpp"

namespace qednp::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

std::size_t column_index(const CsvTable& t, const std::string& name) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw PlotError("no column named '" + name + "'");
    return static_cast<std::size_t>(it - t.header.begin());
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return !(hi >= lo); }
};

}  // namespace

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
    if (table.header.size() < 2) throw PlotError("a plot needs at least two columns");
    if (table.rows() == 0) throw PlotError("no data rows to plot");
    const std::size_t xi = spec.x_column.empty() ? 0 : column_index(table, spec.x_column);
    std::vector<std::size_t> ys;
    if (spec.y_columns.empty()) {
        for (std::size_t i = 0; i < table.header.size(); ++i)
            if (i != xi) ys.push_back(i);
    } else {
        for (const auto& n : spec.y_columns) ys.push_back(column_index(table, n));
    }

    auto usable = [&](double y) { return std::isfinite(y) && (!spec.log_y || y > 0.0); };
    auto ymap = [&](double y) { return spec.log_y ? std::log10(y) : y; };
    Range xr, yr;
    for (double x : table.columns[xi])
        if (std::isfinite(x)) xr.add(x);
    for (auto c : ys)
        for (double y : table.columns[c])
            if (usable(y)) yr.add(ymap(y));
    if (xr.empty() || yr.empty()) throw PlotError("no plottable values");
    if (xr.hi == xr.lo) xr = {xr.lo - 0.5, xr.hi + 0.5};
    if (yr.hi == yr.lo) yr = {yr.lo - 0.5, yr.hi + 0.5};

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (ymap(y) - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        s << "<text x=\"" << fmt2(kLeft) << "\" y=\"24\" font-size=\"14\">" << escape(spec.title) << "</text>\n";
    s << "<rect x=\"" << fmt2(kLeft) << "\" y=\"" << fmt2(kTop) << "\" width=\"" << fmt2(pw) << "\" height=\""
      << fmt2(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double x = kLeft + pw * i / 4.0;
        s << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(kTop + ph) << "\" x2=\"" << fmt2(x) << "\" y2=\""
          << fmt2(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(kTop + ph + 20) << "\" text-anchor=\"middle\">"
          << tick_label(fx) << "</text>\n";
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        const double y = kTop + ph - ph * i / 4.0;
        s << "<line x1=\"" << fmt2(kLeft - 5) << "\" y1=\"" << fmt2(y) << "\" x2=\"" << fmt2(kLeft) << "\" y2=\""
          << fmt2(y) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << fmt2(kLeft - 8) << "\" y=\"" << fmt2(y + 4) << "\" text-anchor=\"end\">"
          << (spec.log_y ? "1e" + tick_label(fy) : tick_label(fy)) << "</text>\n";
    }
    s << "<text x=\"" << fmt2(kLeft + pw / 2) << "\" y=\"" << fmt2(kHeight - 10) << "\" text-anchor=\"middle\">"
      << escape(table.header[xi]) << "</text>\n";

    for (std::size_t k = 0; k < ys.size(); ++k) {
        const auto& xs = table.columns[xi];
        const auto& yv = table.columns[ys[k]];
        const char* color = kColors[k % std::size(kColors)];
        // Unusable samples (log of <= 0) break the line into segments.
        std::string pts;
        auto flush = [&] {
            if (!pts.empty())
                s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << pts
                  << "\"/>\n";
            pts.clear();
        };
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(xs[i]) || !usable(yv[i])) {
                flush();
                continue;
            }
            if (!pts.empty()) pts += ' ';
            pts += fmt2(px(xs[i])) + "," + fmt2(py(yv[i]));
        }
        flush();
        const double ly = kTop + 16.0 * static_cast<double>(k) + 8.0;
        s << "<line x1=\"" << fmt2(kLeft + pw + 12) << "\" y1=\"" << fmt2(ly) << "\" x2=\"" << fmt2(kLeft + pw + 32)
          << "\" y2=\"" << fmt2(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << fmt2(kLeft + pw + 38) << "\" y=\"" << fmt2(ly + 4) << "\">" << escape(table.header[ys[k]])
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void plot_csv(const std::string& csv_path, const std::string& svg_path, const PlotSpec& spec) {
    CsvTable t;
    try {
        t = read_csv(csv_path);
    } catch (const DomainError& e) {
        throw PlotError(e.what());
    }
    write_text_atomic(svg_path, render_svg(t, spec));
}

}  // namespace qednp::cli
