#include "foilgen/svg.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "foilgen/errors.hpp"
#include "foilgen/metrics.hpp"

namespace foilgen::svg {

namespace {

// World window shared by every plot: the chord spans [0, 1] and airfoil
// y values comfortably fit inside [-0.4, 0.4].
constexpr double kYHalfSpan = 0.4;

// Fixed three-decimal formatting keeps the output byte-stable across runs.
std::string format_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string polyline_points(const geometry::CanonicalAirfoil &foil, double width, double height) {
    const geometry::RawAirfoil loop = geometry::loop_to_raw(foil);
    std::string pts;
    pts.reserve(loop.points.size() * 16);
    for (std::size_t i = 0; i < loop.points.size(); ++i) {
        if (i != 0) pts += ' ';
        const double px = loop.points[i].x * width;
        const double py = (kYHalfSpan - loop.points[i].y) / (2.0 * kYHalfSpan) * height;
        pts += format_px(px);
        pts += ',';
        pts += format_px(py);
    }
    return pts;
}

}  // namespace

std::string render_overlay(const std::vector<geometry::CanonicalAirfoil> &airfoils,
                           const PlotOptions &options) {
    if (airfoils.empty()) throw DomainError("render_overlay: no airfoils to plot");
    if (!(options.width > 0.0)) throw DomainError("render_overlay: width must be positive");

    const double width = options.width;
    const double height = width * (2.0 * kYHalfSpan);  // preserve world aspect ratio

    std::string out;
    out.reserve(airfoils.size() * 700 + 512);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 ";
    out += format_px(width);
    out += ' ';
    out += format_px(height);
    out += "\" width=\"";
    out += format_px(width);
    out += "\" height=\"";
    out += format_px(height);
    out += "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    for (const auto &foil : airfoils) {
        out += "<polyline fill=\"none\" stroke=\"#27627e\" stroke-width=\"1\" "
               "stroke-opacity=\"0.10\" points=\"";
        out += polyline_points(foil, width, height);
        out += "\"/>\n";
    }

    if (options.draw_mean) {
        const geometry::CanonicalAirfoil mean = metrics::mean_shape(airfoils);
        out += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"2\" "
               "stroke-dasharray=\"8,6\" points=\"";
        out += polyline_points(mean, width, height);
        out += "\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace foilgen::svg
