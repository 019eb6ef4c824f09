#ifndef LSCD_SVG_HPP
#define LSCD_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace lscd {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y)
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 720;
    int height = 480;
};

// Static vector graphics; output is deterministic for identical input.
std::string render_line_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts);
std::string render_bar_svg(const std::vector<PlotSeries>& series, const PlotOptions& opts);

}  // namespace lscd

#endif
