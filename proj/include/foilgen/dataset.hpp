#pragma once

#include <array>
#include <compare>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "foilgen/errors.hpp"
#include "foilgen/geometry.hpp"

namespace foilgen::dataset {

// One aerodynamic evaluation of an airfoil at a fixed operating point.
struct PerformanceRecord {
  std::string airfoil_id;
  double reynolds = 0.0;
  double mach = 0.0;
  double alpha = 0.0;  // degrees
  double cl = 0.0;
  double cd = 0.0;
};

// Three low/high attribute bits, ordered (cl/cd, alpha, thickness) and
// written as a 3-bit string such as "011".
struct ClassLabel {
  bool perf_high = false;
  bool alpha_high = false;
  bool thick_high = false;

  auto operator<=>(const ClassLabel&) const = default;

  std::string to_string() const;
  static ClassLabel from_string(std::string_view s);  // throws ParseError
  static std::array<ClassLabel, 8> all();
};

// Paired one-hot encoding of a class: each bit becomes (1,0) for low or
// (0,1) for high, pairs concatenated in (perf, alpha, thick) order.
struct LabelVector {
  std::array<double, 6> v{};
};

LabelVector encode_label(const ClassLabel& c);

// Inverse of encode_label: argmax per pair.
ClassLabel decode_label(const LabelVector& v);

// Low/high split points for cl/cd, alpha and thickness.
struct Thresholds {
  double clcd = 100.0;
  double alpha = 10.0;
  double tau = 0.12;

  bool operator==(const Thresholds&) const = default;
};

struct Entry {
  std::string airfoil_id;
  ClassLabel label;
  geometry::CanonicalAirfoil shape;

  bool operator==(const Entry&) const = default;
};

struct LabeledDataset {
  std::vector<Entry> entries;
  Thresholds thresholds;

  bool operator==(const LabeledDataset&) const = default;
};

struct AssignResult {
  LabeledDataset dataset;
  int skipped_records = 0;  // records dropped because cd was zero
};

// Classifies each performance record against the thresholds (strict > for
// high, ties are low) and adds the airfoil once per distinct class it
// attains. Records with cd = 0 are skipped and counted. Throws
// ReferenceError when a record names an unknown airfoil and DomainError for
// non-positive thresholds.
AssignResult assign_classes(
    std::span<const std::pair<std::string, geometry::CanonicalAirfoil>> airfoils,
    std::span<const PerformanceRecord> records, const Thresholds& thresholds = {});

// CSV persistence. Layout: a '#' metadata line carrying format version and
// thresholds, a header `airfoil_id,class,y1..y38`, then one row per entry
// with every value in shortest round-trip decimal form, so that
// load(save(d)) == d exactly.
void save_dataset(const LabeledDataset& d, const std::filesystem::path& path);
LabeledDataset load_dataset(const std::filesystem::path& path);

// Performance-record CSV with header `airfoil_id,Re,M,alpha,cl,cd`.
std::vector<PerformanceRecord> load_performance_records(const std::filesystem::path& path);
void save_performance_records(std::span<const PerformanceRecord> records,
                              const std::filesystem::path& path);

}  // namespace foilgen::dataset
