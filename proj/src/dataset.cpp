#include "foilgen/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "foilgen/csv.hpp"

namespace foilgen::dataset {

namespace {

constexpr std::string_view kDatasetMagic = "# foilgen-dataset v1 thresholds=";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string ClassLabel::to_string() const {
  std::string s(3, '0');
  if (perf_high) s[0] = '1';
  if (alpha_high) s[1] = '1';
  if (thick_high) s[2] = '1';
  return s;
}

ClassLabel ClassLabel::from_string(std::string_view s) {
  if (s.size() != 3 || s.find_first_not_of("01") != std::string_view::npos) {
    throw ParseError("class label must be three 0/1 characters, got '" + std::string(s) + "'");
  }
  return ClassLabel{s[0] == '1', s[1] == '1', s[2] == '1'};
}

std::array<ClassLabel, 8> ClassLabel::all() {
  std::array<ClassLabel, 8> out;
  for (int i = 0; i < 8; ++i) {
    out[i] = ClassLabel{(i & 4) != 0, (i & 2) != 0, (i & 1) != 0};
  }
  return out;
}

LabelVector encode_label(const ClassLabel& c) {
  LabelVector out;
  const bool bits[3] = {c.perf_high, c.alpha_high, c.thick_high};
  for (int k = 0; k < 3; ++k) {
    out.v[2 * k] = bits[k] ? 0.0 : 1.0;
    out.v[2 * k + 1] = bits[k] ? 1.0 : 0.0;
  }
  return out;
}

ClassLabel decode_label(const LabelVector& v) {
  return ClassLabel{v.v[1] > v.v[0], v.v[3] > v.v[2], v.v[5] > v.v[4]};
}

AssignResult assign_classes(
    std::span<const std::pair<std::string, geometry::CanonicalAirfoil>> airfoils,
    std::span<const PerformanceRecord> records, const Thresholds& thresholds) {
  if (thresholds.clcd <= 0.0 || thresholds.alpha <= 0.0 || thresholds.tau <= 0.0) {
    throw DomainError("class thresholds must be positive");
  }
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(airfoils.size());
  for (std::size_t i = 0; i < airfoils.size(); ++i) index.emplace(airfoils[i].first, i);

  AssignResult result;
  result.dataset.thresholds = thresholds;
  std::set<std::pair<std::string, ClassLabel>> seen;
  for (const PerformanceRecord& rec : records) {
    const auto it = index.find(rec.airfoil_id);
    if (it == index.end()) {
      throw ReferenceError("performance record names unknown airfoil '" + rec.airfoil_id + "'");
    }
    if (rec.cd == 0.0) {
      ++result.skipped_records;
      continue;
    }
    const geometry::CanonicalAirfoil& shape = airfoils[it->second].second;
    ClassLabel label;
    label.perf_high = rec.cl / rec.cd > thresholds.clcd;
    label.alpha_high = rec.alpha > thresholds.alpha;
    label.thick_high = geometry::thickness(shape) > thresholds.tau;
    if (seen.emplace(rec.airfoil_id, label).second) {
      result.dataset.entries.push_back({rec.airfoil_id, label, shape});
    }
  }
  return result;
}

void save_dataset(const LabeledDataset& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path.string() + "'");
  out << kDatasetMagic << csv::format_double(d.thresholds.clcd) << ','
      << csv::format_double(d.thresholds.alpha) << ',' << csv::format_double(d.thresholds.tau)
      << '\n';
  out << "airfoil_id,class";
  for (int i = 1; i <= geometry::kCanonicalSize; ++i) out << ",y" << i;
  out << '\n';
  for (const Entry& e : d.entries) {
    out << e.airfoil_id << ',' << e.label.to_string();
    for (double y : e.shape.y) out << ',' << csv::format_double(y);
    out << '\n';
  }
  if (!out) throw SchemaError("failed writing '" + path.string() + "'");
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto lines = csv::split_lines(text);
  if (lines.empty()) throw SchemaError("'" + path.string() + "' is empty");

  LabeledDataset d;
  std::size_t row = 0;

  // Metadata line is optional so that externally produced files with only
  // the column header still load (thresholds then default).
  std::string_view first = csv::trim(lines[0]);
  if (first.starts_with("#")) {
    if (!first.starts_with(kDatasetMagic)) {
      throw SchemaError("'" + path.string() + "': unsupported dataset version line '" +
                        std::string(first) + "'");
    }
    const auto vals = csv::split_fields(first.substr(kDatasetMagic.size()));
    if (vals.size() != 3) throw SchemaError("'" + path.string() + "': malformed thresholds");
    d.thresholds.clcd = csv::parse_double(vals[0], 1);
    d.thresholds.alpha = csv::parse_double(vals[1], 1);
    d.thresholds.tau = csv::parse_double(vals[2], 1);
    row = 1;
  }
  if (row >= lines.size()) throw SchemaError("'" + path.string() + "': missing header");
  const auto header = csv::split_fields(csv::trim(lines[row]));
  const std::size_t expected_cols = 2 + geometry::kCanonicalSize;
  if (header.size() != expected_cols || header[0] != "airfoil_id" || header[1] != "class") {
    throw SchemaError("'" + path.string() + "': expected header airfoil_id,class,y1..y" +
                      std::to_string(geometry::kCanonicalSize) + " with " +
                      std::to_string(expected_cols) + " columns, got " +
                      std::to_string(header.size()));
  }
  ++row;

  for (; row < lines.size(); ++row) {
    const std::string_view line = csv::trim(lines[row]);
    if (line.empty()) continue;
    const auto fields = csv::split_fields(line);
    const int line_no = static_cast<int>(row) + 1;
    if (fields.size() != expected_cols) {
      throw SchemaError("'" + path.string() + "' line " + std::to_string(line_no) +
                        ": expected " + std::to_string(expected_cols) + " columns (38 y values), got " +
                        std::to_string(fields.size()));
    }
    Entry e;
    e.airfoil_id = std::string(fields[0]);
    e.label = ClassLabel::from_string(fields[1]);
    for (int i = 0; i < geometry::kCanonicalSize; ++i) {
      e.shape.y[i] = csv::parse_double(fields[2 + static_cast<std::size_t>(i)], line_no);
    }
    d.entries.push_back(std::move(e));
  }
  return d;
}

std::vector<PerformanceRecord> load_performance_records(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto lines = csv::split_lines(text);
  std::vector<PerformanceRecord> out;
  bool have_header = false;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    const std::string_view line = csv::trim(lines[row]);
    if (line.empty() || line.front() == '#') continue;
    const int line_no = static_cast<int>(row) + 1;
    if (!have_header) {
      if (line != "airfoil_id,Re,M,alpha,cl,cd") {
        throw SchemaError("'" + path.string() +
                          "': expected header airfoil_id,Re,M,alpha,cl,cd, got '" +
                          std::string(line) + "'");
      }
      have_header = true;
      continue;
    }
    const auto fields = csv::split_fields(line);
    if (fields.size() != 6) {
      throw SchemaError("'" + path.string() + "' line " + std::to_string(line_no) +
                        ": expected 6 columns, got " + std::to_string(fields.size()));
    }
    PerformanceRecord rec;
    rec.airfoil_id = std::string(fields[0]);
    rec.reynolds = csv::parse_double(fields[1], line_no);
    rec.mach = csv::parse_double(fields[2], line_no);
    rec.alpha = csv::parse_double(fields[3], line_no);
    rec.cl = csv::parse_double(fields[4], line_no);
    rec.cd = csv::parse_double(fields[5], line_no);
    out.push_back(std::move(rec));
  }
  if (!have_header) throw SchemaError("'" + path.string() + "': missing header");
  return out;
}

void save_performance_records(std::span<const PerformanceRecord> records,
                              const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path.string() + "'");
  out << "airfoil_id,Re,M,alpha,cl,cd\n";
  for (const PerformanceRecord& r : records) {
    out << r.airfoil_id << ',' << csv::format_double(r.reynolds) << ','
        << csv::format_double(r.mach) << ',' << csv::format_double(r.alpha) << ','
        << csv::format_double(r.cl) << ',' << csv::format_double(r.cd) << '\n';
  }
  if (!out) throw SchemaError("failed writing '" + path.string() + "'");
}

}  // namespace foilgen::dataset
