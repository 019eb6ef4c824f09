#include "lscd/svg.hpp"

#include <algorithm>
#include <cmath>

#include "lscd/error.hpp"
#include "lscd/io.hpp"

namespace lscd {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;
constexpr int kMarginLeft = 64;
constexpr int kMarginRight = 140;  // legend space
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 48;

struct Extent {
    double x_min, x_max, y_min, y_max;
};

Extent data_extent(const std::vector<PlotSeries>& series) {
    Extent e{0, 1, 0, 1};
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                e = {x, x, y, y};
                first = false;
            } else {
                e.x_min = std::min(e.x_min, x);
                e.x_max = std::max(e.x_max, x);
                e.y_min = std::min(e.y_min, y);
                e.y_max = std::max(e.y_max, y);
            }
        }
    }
    if (first) throw DataError("plot: no data points");
    if (e.x_min == e.x_max) {
        e.x_min -= 0.5;
        e.x_max += 0.5;
    }
    if (e.y_min == e.y_max) {
        e.y_min -= 0.5;
        e.y_max += 0.5;
    }
    // Always anchor bar/line baselines sensibly at zero when close.
    if (e.y_min > 0.0 && e.y_min < 0.25 * e.y_max) e.y_min = 0.0;
    return e;
}

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) { return format_sig(v, 6); }

void draw_frame(std::string& svg, const PlotOptions& opts, const Extent& e,
                double plot_w, double plot_h) {
    auto sx = [&](double x) {
        return kMarginLeft + (x - e.x_min) / (e.x_max - e.x_min) * plot_w;
    };
    auto sy = [&](double y) {
        return kMarginTop + plot_h - (y - e.y_min) / (e.y_max - e.y_min) * plot_h;
    };
    svg += "<rect x='" + num(kMarginLeft) + "' y='" + num(kMarginTop) + "' width='" +
           num(plot_w) + "' height='" + num(plot_h) + "' fill='none' stroke='#333'/>\n";
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        double fx = e.x_min + (e.x_max - e.x_min) * i / ticks;
        double fy = e.y_min + (e.y_max - e.y_min) * i / ticks;
        svg += "<line x1='" + num(sx(fx)) + "' y1='" + num(kMarginTop + plot_h) + "' x2='" +
               num(sx(fx)) + "' y2='" + num(kMarginTop + plot_h + 5) + "' stroke='#333'/>\n";
        svg += "<text x='" + num(sx(fx)) + "' y='" + num(kMarginTop + plot_h + 18) +
               "' font-size='11' text-anchor='middle'>" + format_sig(fx, 4) + "</text>\n";
        svg += "<line x1='" + num(kMarginLeft - 5) + "' y1='" + num(sy(fy)) + "' x2='" +
               num(kMarginLeft) + "' y2='" + num(sy(fy)) + "' stroke='#333'/>\n";
        svg += "<text x='" + num(kMarginLeft - 8) + "' y='" + num(sy(fy) + 4) +
               "' font-size='11' text-anchor='end'>" + format_sig(fy, 4) + "</text>\n";
    }
    if (!opts.title.empty()) {
        svg += "<text x='" + num(kMarginLeft + plot_w / 2) + "' y='20' font-size='14' "
               "text-anchor='middle'>" + esc(opts.title) + "</text>\n";
    }
    if (!opts.x_label.empty()) {
        svg += "<text x='" + num(kMarginLeft + plot_w / 2) + "' y='" +
               num(kMarginTop + plot_h + 38) + "' font-size='12' text-anchor='middle'>" +
               esc(opts.x_label) + "</text>\n";
    }
    if (!opts.y_label.empty()) {
        svg += "<text x='14' y='" + num(kMarginTop + plot_h / 2) +
               "' font-size='12' text-anchor='middle' transform='rotate(-90 14 " +
               num(kMarginTop + plot_h / 2) + ")'>" + esc(opts.y_label) + "</text>\n";
    }
}

void draw_legend(std::string& svg, const std::vector<PlotSeries>& series, double plot_w) {
    for (std::size_t s = 0; s < series.size(); ++s) {
        double y = kMarginTop + 14.0 * s;
        const char* color = kPalette[s % kPaletteSize];
        svg += "<rect x='" + num(kMarginLeft + plot_w + 12) + "' y='" + num(y) +
               "' width='10' height='10' fill='" + color + "'/>\n";
        svg += "<text x='" + num(kMarginLeft + plot_w + 26) + "' y='" + num(y + 9) +
               "' font-size='11'>" + esc(series[s].label) + "</text>\n";
    }
}

std::string open_svg(const PlotOptions& opts) {
    return "<svg xmlns='http://www.w3.org/2000/svg' width='" + std::to_string(opts.width) +
           "' height='" + std::to_string(opts.height) +
           "' font-family='sans-serif'>\n<rect width='100%' height='100%' fill='white'/>\n";
}

}  // namespace

std::string render_line_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts) {
    Extent e = data_extent(series);
    const double plot_w = opts.width - kMarginLeft - kMarginRight;
    const double plot_h = opts.height - kMarginTop - kMarginBottom;
    auto sx = [&](double x) {
        return kMarginLeft + (x - e.x_min) / (e.x_max - e.x_min) * plot_w;
    };
    auto sy = [&](double y) {
        return kMarginTop + plot_h - (y - e.y_min) / (e.y_max - e.y_min) * plot_h;
    };

    std::string svg = open_svg(opts);
    draw_frame(svg, opts, e, plot_w, plot_h);
    for (std::size_t s = 0; s < series.size(); ++s) {
        auto points = series[s].points;
        std::sort(points.begin(), points.end());
        const char* color = kPalette[s % kPaletteSize];
        std::string path;
        for (std::size_t i = 0; i < points.size(); ++i) {
            path += (i == 0 ? "M" : "L");
            path += num(sx(points[i].first)) + " " + num(sy(points[i].second)) + " ";
        }
        svg += "<path d='" + path + "' fill='none' stroke='" + color + "' stroke-width='1.6'/>\n";
        for (const auto& [x, y] : points) {
            svg += "<circle cx='" + num(sx(x)) + "' cy='" + num(sy(y)) + "' r='2.4' fill='" +
                   color + "'/>\n";
        }
    }
    draw_legend(svg, series, plot_w);
    svg += "</svg>\n";
    return svg;
}

std::string render_bar_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts) {
    Extent e = data_extent(series);
    if (e.y_min > 0.0) e.y_min = 0.0;
    const double plot_w = opts.width - kMarginLeft - kMarginRight;
    const double plot_h = opts.height - kMarginTop - kMarginBottom;

    // Bars are laid out per distinct x, groups side by side.
    std::vector<double> xs;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    double min_gap = plot_w;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double gap = (xs[i] - xs[i - 1]) / (e.x_max - e.x_min) * plot_w;
        min_gap = std::min(min_gap, gap);
    }
    if (xs.size() == 1) min_gap = plot_w / 2;
    const double slot = min_gap * 0.8;
    const double bar_w = slot / static_cast<double>(series.size());

    auto sx = [&](double x) {
        return kMarginLeft + (x - e.x_min) / (e.x_max - e.x_min) * plot_w;
    };
    auto sy = [&](double y) {
        return kMarginTop + plot_h - (y - e.y_min) / (e.y_max - e.y_min) * plot_h;
    };

    std::string svg = open_svg(opts);
    draw_frame(svg, opts, e, plot_w, plot_h);
    double base = sy(0.0);
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        for (const auto& [x, y] : series[s].points) {
            double left = sx(x) - slot / 2 + bar_w * static_cast<double>(s);
            double top = std::min(sy(y), base);
            double h = std::fabs(base - sy(y));
            svg += "<rect x='" + num(left) + "' y='" + num(top) + "' width='" + num(bar_w * 0.92) +
                   "' height='" + num(h) + "' fill='" + color + "' fill-opacity='0.85'/>\n";
        }
    }
    draw_legend(svg, series, plot_w);
    svg += "</svg>\n";
    return svg;
}

}  // namespace lscd
