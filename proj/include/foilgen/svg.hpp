#pragma once

#include <string>
#include <vector>

#include "foilgen/geometry.hpp"

namespace foilgen::svg {

/// Options controlling the rendered overlay plot.
struct PlotOptions {
    /// Draw the dashed mean-shape polyline on top of the samples.
    bool draw_mean = true;
    /// Canvas width in pixels; height follows from the fixed world aspect.
    double width = 1000.0;
};

/// Render a set of canonical airfoils as a standalone SVG document.
///
/// The world window is fixed at x in [0, 1] and y in [-0.4, 0.4] so that
/// plots of different sample sets are directly comparable.  Each airfoil
/// becomes one low-opacity closed polyline; when `draw_mean` is set the
/// elementwise mean shape is drawn last as a dashed polyline.  Coordinates
/// are emitted with fixed precision, so the same input always produces the
/// same bytes.
///
/// Throws DomainError when `airfoils` is empty.
std::string render_overlay(const std::vector<geometry::CanonicalAirfoil> &airfoils,
                           const PlotOptions &options = {});

}  // namespace foilgen::svg
