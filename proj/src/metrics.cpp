#include "foilgen/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace foilgen::metrics {

namespace {

void check_nonempty(const SampleSet& s) {
  if (s.samples.empty()) throw DomainError("sample set is empty");
}

}  // namespace

geometry::CanonicalAirfoil mean_shape(const std::vector<geometry::CanonicalAirfoil>& curves) {
  if (curves.empty()) throw DomainError("sample set is empty");
  geometry::CanonicalAirfoil mean;
  for (const geometry::CanonicalAirfoil& a : curves) {
    for (int i = 0; i < geometry::kCanonicalSize; ++i) mean.y[i] += a.y[i];
  }
  const double inv = 1.0 / static_cast<double>(curves.size());
  for (double& v : mean.y) v *= inv;
  return mean;
}

geometry::CanonicalAirfoil mean_shape(const SampleSet& s) { return mean_shape(s.samples); }

double acc_tau(const SampleSet& s, double tau_threshold) {
  check_nonempty(s);
  if (tau_threshold <= 0.0) throw DomainError("thickness threshold must be positive");
  std::size_t correct = 0;
  for (const geometry::CanonicalAirfoil& a : s.samples) {
    const bool high = geometry::thickness(a) > tau_threshold;
    if (high == s.label.thick_high) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(s.samples.size());
}

double sigma_tau(const SampleSet& s) {
  check_nonempty(s);
  std::vector<double> taus;
  taus.reserve(s.samples.size());
  double max_tau = -1.0;
  for (const geometry::CanonicalAirfoil& a : s.samples) {
    taus.push_back(geometry::thickness(a));
    max_tau = std::max(max_tau, taus.back());
  }
  if (max_tau <= 0.0) throw DomainError("sigma_tau needs a positive maximum thickness");
  double mean = 0.0;
  for (double& t : taus) {
    t /= max_tau;
    mean += t;
  }
  mean /= static_cast<double>(taus.size());
  double var = 0.0;
  for (double t : taus) var += (t - mean) * (t - mean);
  var /= static_cast<double>(taus.size());  // population variance
  return std::sqrt(var);
}

double shape_diversity(const SampleSet& s) {
  check_nonempty(s);
  const geometry::CanonicalAirfoil mean = mean_shape(s);
  double sum = 0.0;
  for (const geometry::CanonicalAirfoil& a : s.samples) {
    double sq = 0.0;
    for (int i = 0; i < geometry::kCanonicalSize; ++i) {
      const double d = a.y[i] - mean.y[i];
      sq += d * d;
    }
    sum += std::sqrt(sq);
  }
  return sum / static_cast<double>(s.samples.size());
}

}  // namespace foilgen::metrics
