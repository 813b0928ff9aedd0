#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace royal::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 260.0;
constexpr double kMargin = 50.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, double x_min, double x_max) {
    const double height = kPanelHeight * static_cast<double>(panels.size());
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(height)
       << "\" viewBox=\"0 0 " << fmt(kWidth) << " " << fmt(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (size_t k = 0; k < panels.size(); ++k) {
        const Panel& pn = panels[k];
        const double top = kPanelHeight * static_cast<double>(k) + 30.0;
        const double bottom = kPanelHeight * static_cast<double>(k + 1) - 30.0;
        const double left = kMargin, right = kWidth - 20.0;

        double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
        for (const auto& c : pn.curves)
            for (double y : c.y)
                if (std::isfinite(y)) y_min = std::min(y_min, y), y_max = std::max(y_max, y);
        if (!std::isfinite(y_min)) y_min = 0.0, y_max = 1.0;
        if (y_max - y_min < 1e-9) y_min -= 0.5, y_max += 0.5;

        auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
        auto py = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

        os << "<g>\n";
        os << "<text x=\"" << fmt(left) << "\" y=\"" << fmt(top - 10) << "\" font-size=\"13\">" << escape(pn.title)
           << "</text>\n";
        os << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(right - left)
           << "\" height=\"" << fmt(bottom - top) << "\" fill=\"none\" stroke=\"black\"/>\n";
        os << "<text x=\"4\" y=\"" << fmt(top + 12) << "\" font-size=\"10\">" << fmt(y_max) << "</text>\n";
        os << "<text x=\"4\" y=\"" << fmt(bottom) << "\" font-size=\"10\">" << fmt(y_min) << "</text>\n";
        os << "<text x=\"4\" y=\"" << fmt(0.5 * (top + bottom)) << "\" font-size=\"10\">" << escape(pn.y_label)
           << "</text>\n";

        for (size_t c = 0; c < pn.curves.size(); ++c) {
            const Curve& cv = pn.curves[c];
            os << "<polyline fill=\"none\" stroke-width=\"1\" stroke=\"" << kPalette[c % 10] << "\" points=\"";
            for (size_t i = 0; i < cv.x.size(); ++i) {
                if (!std::isfinite(cv.y[i])) continue;
                os << fmt(px(cv.x[i])) << "," << fmt(py(cv.y[i])) << (i + 1 < cv.x.size() ? " " : "");
            }
            os << "\"><title>" << escape(cv.label) << "</title></polyline>\n";
        }
        for (double m : pn.markers) {
            os << "<line x1=\"" << fmt(px(m)) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(px(m)) << "\" y2=\""
               << fmt(bottom) << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
            os << "<circle cx=\"" << fmt(px(m)) << "\" cy=\"" << fmt(top) << "\" r=\"4\" fill=\"red\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace royal::cli
