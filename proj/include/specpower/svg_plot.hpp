#pragma once

#include <string>
#include <utility>
#include <vector>

namespace specpower {

// Minimal deterministic SVG output: axes, tick labels, one scatter or line
// series per vendor. Anything fancier is out of scope; distributions go into
// the quantile tables instead.
struct PlotSeries {
    std::string label;
    std::string color;
    bool line = false;  // scatter by default
    std::vector<std::pair<double, double>> points;
};

std::string render_svg_plot(const std::string& title, const std::string& x_label,
                            const std::string& y_label,
                            const std::vector<PlotSeries>& series);

}  // namespace specpower
