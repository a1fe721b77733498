#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "foilgen/errors.hpp"

namespace foilgen::geometry {

// Number of chordwise stations (both endpoints included).
inline constexpr int kStationCount = 20;

// Points on the closed surface loop: 18 interior stations on each surface
// plus one trailing-edge and one leading-edge point.
inline constexpr int kCanonicalSize = 38;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Airfoil polyline as read from a coordinate file: trailing edge -> upper
// surface -> leading edge -> lower surface -> trailing edge, x in [0, 1].
struct RawAirfoil {
  std::string name;
  std::vector<Point> points;
};

// The 38 Y values at the fixed cosine stations, in loop order:
//   index 0       trailing edge (x = 1)
//   index 1..18   upper surface, x decreasing (station 18 down to 1)
//   index 19      leading edge (x = 0)
//   index 20..37  lower surface, x increasing (station 1 up to 18)
struct CanonicalAirfoil {
  std::array<double, kCanonicalSize> y{};

  bool operator==(const CanonicalAirfoil&) const = default;
};

// The 20 chordwise sample positions, strictly increasing from 0 to 1.
struct StationSet {
  std::array<double, kStationCount> x{};
};

// x_j = (1 - cos(pi * j / 19)) / 2 for j = 0..19; clusters points toward
// both edges.
StationSet cosine_stations();

// The chordwise position of each canonical loop index.
const std::array<double, kCanonicalSize>& canonical_x();

// Loop index holding the other surface's value at the same station.
// Trailing- and leading-edge indices map to themselves.
inline int mirror_index(int i) { return (i == 0 || i == 19) ? i : kCanonicalSize - i; }

// Parses a Selig-format coordinate file: name line, then one "x y" pair per
// line. Blank lines and lines starting with '#' are skipped. If the x range
// deviates from [0, 1] by more than 1e-3 the chord is shifted/rescaled to
// [0, 1] and y is divided by the same chord length.
//
// Throws ParseError (with line number) on malformed numbers and
// InsufficientDataError when fewer than 20 points are present.
RawAirfoil parse_selig(std::string_view text);

// Resamples a raw polyline onto the canonical 38-point representation:
// splits at the minimum-x point, interpolates each surface linearly at the
// interior stations, collapses the trailing edge to the mean of the two
// surface endpoints and the leading edge to the minimum-x point's y.
//
// Throws GeometryError when x is not strictly monotonic along a surface and
// InsufficientDataError when a surface has fewer than 10 points.
CanonicalAirfoil resample(const RawAirfoil& raw);

// Inverse layout transform: canonical values back to a closed raw polyline
// (38 + 1 points; the trailing-edge point is repeated at the end).
RawAirfoil loop_to_raw(const CanonicalAirfoil& a, std::string name = "canonical");

// Maximum thickness: max over the 18 interior stations of upper minus lower
// y, measured vertically at shared stations. A negative value flags a
// self-intersecting shape.
double thickness(const CanonicalAirfoil& a);

// NACA 4-digit section sampled at the cosine stations, closed trailing edge
// (the -0.1015 quartic coefficient replaced by -0.1036). Camber m in
// [0, 0.1]; camber position p in [0.1, 0.9] (ignored when m = 0); thickness
// t in [0.01, 0.4]. Throws DomainError outside these ranges.
CanonicalAirfoil naca4(double camber, double camber_pos, double thickness);

}  // namespace foilgen::geometry
