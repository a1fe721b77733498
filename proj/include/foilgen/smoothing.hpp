#pragma once

#include <span>
#include <vector>

#include "foilgen/errors.hpp"

namespace foilgen::smoothing {

// Weight of the smoothing penalty. The moving-average window is fixed at 3.
struct SmoothingConfig {
  double omega = 10.0;
  static constexpr int window = 3;
};

// Cyclic 3-point moving average: out_i = (y_{i-1} + y_i + y_{i+1}) / 3 with
// wraparound indices. Throws DomainError for n < 3.
std::vector<double> moving_average_cyclic(std::span<const double> y);

// Deviation of each point from its cyclic moving average.
std::vector<double> deviations(std::span<const double> y);

// L_S = (omega / n) * sum_i d_i^2 where d is the deviation vector.
// Throws DomainError for n < 3 or omega < 0.
double smoothing_loss(std::span<const double> y, double omega);

// Exact gradient of smoothing_loss with respect to y:
//   g_i = (2 omega / n) * (d_i - (d_{i-1} + d_i + d_{i+1}) / 3).
std::vector<double> smoothing_loss_grad(std::span<const double> y, double omega);

// Convolution weights of the Savitzky-Golay filter: the center value of the
// least-squares polynomial of the given order over window points. Throws
// DomainError unless 0 <= order < window and window is odd.
std::vector<double> savitzky_golay_weights(int window, int order);

// Savitzky-Golay filter. Cyclic mode wraps indices around the loop; open
// mode shifts the window to stay in bounds near the ends and evaluates the
// fitted polynomial at the point's offset.
std::vector<double> savitzky_golay(std::span<const double> y, int window, int order,
                                   bool cyclic = true);

}  // namespace foilgen::smoothing
