#pragma once

#include <string>
#include <vector>

namespace g2mono {

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 640;
    int height = 420;
};

/// Standalone SVG with one path per series, axes and tick labels.
std::string line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);
void write_svg(const std::string& path, const std::string& svg);

}  // namespace g2mono
