#pragma once

#include <string>
#include <vector>

namespace royal::cli {

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Panel {
    std::string title;
    std::string y_label;
    std::vector<Curve> curves;
    std::vector<double> markers;  // x positions of vertical markers
};

/// Panels stacked vertically, one polyline per curve, markers drawn as
/// dashed lines with a circle at the top.
std::string render_svg(const std::vector<Panel>& panels, double x_min, double x_max);

}  // namespace royal::cli
