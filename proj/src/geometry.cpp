#include "foilgen/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "foilgen/csv.hpp"

namespace foilgen::geometry {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Linear interpolation of (xs, ys) at x. xs must be strictly increasing and
// bracket x.
double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

StationSet cosine_stations() {
  StationSet s;
  for (int j = 0; j < kStationCount; ++j) {
    s.x[j] = (1.0 - std::cos(kPi * j / (kStationCount - 1))) / 2.0;
  }
  s.x[0] = 0.0;
  s.x[kStationCount - 1] = 1.0;
  return s;
}

const std::array<double, kCanonicalSize>& canonical_x() {
  static const std::array<double, kCanonicalSize> xs = [] {
    const StationSet s = cosine_stations();
    std::array<double, kCanonicalSize> out{};
    out[0] = 1.0;
    for (int i = 1; i <= 18; ++i) out[i] = s.x[19 - i];  // upper, decreasing
    out[19] = 0.0;
    for (int i = 20; i < kCanonicalSize; ++i) out[i] = s.x[i - 19];  // lower, increasing
    return out;
  }();
  return xs;
}

RawAirfoil parse_selig(std::string_view text) {
  RawAirfoil foil;
  bool have_name = false;
  int line_no = 0;
  for (std::string_view raw_line : csv::split_lines(text)) {
    ++line_no;
    const std::string_view line = csv::trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    if (!have_name) {
      foil.name = std::string(line);
      have_name = true;
      continue;
    }
    // Two whitespace-separated decimals.
    std::size_t split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ParseError("expected two coordinates, got '" + std::string(line) + "'", line_no);
    }
    const std::string_view xs = line.substr(0, split);
    const std::string_view ys = csv::trim(line.substr(split));
    if (ys.empty() || ys.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("expected exactly two coordinates, got '" + std::string(line) + "'",
                       line_no);
    }
    foil.points.push_back({csv::parse_double(xs, line_no), csv::parse_double(ys, line_no)});
  }
  if (!have_name) throw ParseError("empty coordinate file");
  if (foil.points.size() < 20) {
    throw InsufficientDataError("airfoil '" + foil.name + "' has only " +
                                std::to_string(foil.points.size()) + " points (minimum 20)");
  }

  double xmin = foil.points.front().x;
  double xmax = xmin;
  for (const Point& p : foil.points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  if (xmax - xmin <= 0.0) {
    throw GeometryError("airfoil '" + foil.name + "' has zero chord extent");
  }
  if (std::abs(xmin) > 1e-3 || std::abs(xmax - 1.0) > 1e-3) {
    // Chord not normalized: shift/rescale x to [0, 1] and divide y by the
    // same chord length, leaving the shape unchanged.
    const double chord = xmax - xmin;
    for (Point& p : foil.points) {
      p.x = (p.x - xmin) / chord;
      p.y = p.y / chord;
    }
  }
  return foil;
}

CanonicalAirfoil resample(const RawAirfoil& raw) {
  // Split at the minimum-x point: file order runs TE -> upper -> LE -> lower.
  std::size_t le = 0;
  for (std::size_t i = 1; i < raw.points.size(); ++i) {
    if (raw.points[i].x < raw.points[le].x) le = i;
  }
  if (le + 1 < 10 || raw.points.size() - le < 10) {
    throw InsufficientDataError("airfoil '" + raw.name +
                                "' has fewer than 10 points on a surface");
  }

  // Each surface as strictly increasing x; exact duplicate points collapse.
  auto build_surface = [&](bool upper, std::vector<double>& xs, std::vector<double>& ys) {
    xs.clear();
    ys.clear();
    if (upper) {
      for (std::size_t i = le + 1; i-- > 0;) {
        const Point& p = raw.points[i];
        if (!xs.empty() && p.x == xs.back() && p.y == ys.back()) continue;
        xs.push_back(p.x);
        ys.push_back(p.y);
      }
    } else {
      for (std::size_t i = le; i < raw.points.size(); ++i) {
        const Point& p = raw.points[i];
        if (!xs.empty() && p.x == xs.back() && p.y == ys.back()) continue;
        xs.push_back(p.x);
        ys.push_back(p.y);
      }
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] <= xs[i - 1]) {
        throw GeometryError("airfoil '" + raw.name + "': non-monotonic x on the " +
                            (upper ? "upper" : "lower") + " surface near x=" +
                            csv::format_double(xs[i]));
      }
    }
  };

  std::vector<double> ux, uy, lx, ly;
  build_surface(true, ux, uy);
  build_surface(false, lx, ly);

  const StationSet stations = cosine_stations();
  CanonicalAirfoil out;
  out.y[0] = (uy.back() + ly.back()) / 2.0;  // trailing edge, both surfaces end at x=1
  out.y[19] = raw.points[le].y;              // leading edge
  for (int j = 1; j <= 18; ++j) {
    out.y[19 - j] = interp_linear(ux, uy, stations.x[j]);
    out.y[19 + j] = interp_linear(lx, ly, stations.x[j]);
  }
  return out;
}

RawAirfoil loop_to_raw(const CanonicalAirfoil& a, std::string name) {
  RawAirfoil raw;
  raw.name = std::move(name);
  const auto& xs = canonical_x();
  raw.points.reserve(kCanonicalSize + 1);
  for (int i = 0; i < kCanonicalSize; ++i) raw.points.push_back({xs[i], a.y[i]});
  raw.points.push_back({xs[0], a.y[0]});  // close the loop at the trailing edge
  return raw;
}

double thickness(const CanonicalAirfoil& a) {
  double tau = a.y[1] - a.y[37];
  for (int j = 2; j <= 18; ++j) {
    tau = std::max(tau, a.y[19 - j] - a.y[19 + j]);
  }
  return tau;
}

CanonicalAirfoil naca4(double camber, double camber_pos, double thickness) {
  if (camber < 0.0 || camber > 0.1) {
    throw DomainError("naca4: camber " + csv::format_double(camber) + " outside [0, 0.1]");
  }
  if (camber > 0.0 && (camber_pos < 0.1 || camber_pos > 0.9)) {
    throw DomainError("naca4: camber position " + csv::format_double(camber_pos) +
                      " outside [0.1, 0.9]");
  }
  if (thickness < 0.01 || thickness > 0.4) {
    throw DomainError("naca4: thickness " + csv::format_double(thickness) +
                      " outside [0.01, 0.4]");
  }

  // Half thickness; the closed-trailing-edge quartic coefficient.
  auto half_thickness = [&](double x) {
    return 5.0 * thickness *
           (0.2969 * std::sqrt(x) - 0.1260 * x - 0.3516 * x * x + 0.2843 * x * x * x -
            0.1036 * x * x * x * x);
  };
  auto camber_line = [&](double x) {
    if (camber == 0.0) return 0.0;
    const double m = camber;
    const double p = camber_pos;
    if (x < p) return m / (p * p) * (2.0 * p * x - x * x);
    return m / ((1.0 - p) * (1.0 - p)) * ((1.0 - 2.0 * p) + 2.0 * p * x - x * x);
  };

  const StationSet stations = cosine_stations();
  CanonicalAirfoil out;
  const double te_upper = camber_line(1.0) + half_thickness(1.0);
  const double te_lower = camber_line(1.0) - half_thickness(1.0);
  out.y[0] = (te_upper + te_lower) / 2.0;
  out.y[19] = camber_line(0.0);
  for (int j = 1; j <= 18; ++j) {
    const double x = stations.x[j];
    const double yc = camber_line(x);
    const double yt = half_thickness(x);
    out.y[19 - j] = yc + yt;
    out.y[19 + j] = yc - yt;
  }
  return out;
}

}  // namespace foilgen::geometry
