#pragma once

#include <vector>

#include "foilgen/dataset.hpp"
#include "foilgen/geometry.hpp"

namespace foilgen::metrics {

// A batch of generated curves for one class.
struct SampleSet {
  std::vector<geometry::CanonicalAirfoil> samples;
  dataset::ClassLabel label;
};

// Elementwise arithmetic mean of the curves. Throws DomainError when empty.
geometry::CanonicalAirfoil mean_shape(const std::vector<geometry::CanonicalAirfoil>& curves);
geometry::CanonicalAirfoil mean_shape(const SampleSet& s);

// Percentage of samples whose thickness falls on the side (strict > for
// high, ties are low) demanded by the set's thick_high bit.
double acc_tau(const SampleSet& s, double tau_threshold);

// Population standard deviation of thicknesses rescaled by their maximum.
// Throws DomainError when the maximum thickness is not positive.
double sigma_tau(const SampleSet& s);

// Mean Euclidean distance of the samples from their mean shape.
double shape_diversity(const SampleSet& s);

}  // namespace foilgen::metrics
