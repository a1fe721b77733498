#include "foilgen/smoothing.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace foilgen::smoothing {

namespace {

void check_size(std::span<const double> y) {
  if (y.size() < 3) {
    throw DomainError("cyclic smoothing needs at least 3 points, got " +
                      std::to_string(y.size()));
  }
}

// Solves the small SPD system A x = b in place by Gaussian elimination with
// partial pivoting. Sizes here never exceed window size.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0) throw DomainError("singular least-squares system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// Least-squares polynomial coefficients for samples at integer offsets
// offs[k] with values vals[k].
std::vector<double> fit_poly(const std::vector<double>& offs, const std::vector<double>& vals,
                             int order) {
  const std::size_t terms = static_cast<std::size_t>(order) + 1;
  std::vector<std::vector<double>> ata(terms, std::vector<double>(terms, 0.0));
  std::vector<double> atb(terms, 0.0);
  for (std::size_t k = 0; k < offs.size(); ++k) {
    double pow_i = 1.0;
    std::vector<double> powers(2 * terms - 1);
    for (std::size_t e = 0; e < powers.size(); ++e) {
      powers[e] = pow_i;
      pow_i *= offs[k];
    }
    for (std::size_t r = 0; r < terms; ++r) {
      for (std::size_t c = 0; c < terms; ++c) ata[r][c] += powers[r + c];
      atb[r] += powers[r] * vals[k];
    }
  }
  return solve_dense(std::move(ata), std::move(atb));
}

void check_window(std::size_t n, int window, int order) {
  if (window < 1 || window % 2 == 0) {
    throw DomainError("Savitzky-Golay window must be odd and positive, got " +
                      std::to_string(window));
  }
  if (order < 0 || order >= window) {
    throw DomainError("Savitzky-Golay order " + std::to_string(order) +
                      " must satisfy 0 <= order < window " + std::to_string(window));
  }
  if (static_cast<std::size_t>(window) > n) {
    throw DomainError("Savitzky-Golay window " + std::to_string(window) +
                      " exceeds series length " + std::to_string(n));
  }
}

}  // namespace

std::vector<double> moving_average_cyclic(std::span<const double> y) {
  check_size(y);
  const std::size_t n = y.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = y[(i + n - 1) % n];
    const double next = y[(i + 1) % n];
    out[i] = (prev + y[i] + next) / 3.0;
  }
  return out;
}

std::vector<double> deviations(std::span<const double> y) {
  std::vector<double> out = moving_average_cyclic(y);
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - out[i];
  return out;
}

double smoothing_loss(std::span<const double> y, double omega) {
  if (omega < 0.0) throw DomainError("smoothing weight must be nonnegative");
  const std::vector<double> d = deviations(y);
  double sum = 0.0;
  for (double v : d) sum += v * v;
  return omega / static_cast<double>(y.size()) * sum;
}

std::vector<double> smoothing_loss_grad(std::span<const double> y, double omega) {
  if (omega < 0.0) throw DomainError("smoothing weight must be nonnegative");
  const std::vector<double> d = deviations(y);
  const std::size_t n = y.size();
  // The deviation operator I - A is symmetric, so the chain rule reapplies it.
  std::vector<double> g(n);
  const double scale = 2.0 * omega / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = d[(i + n - 1) % n];
    const double next = d[(i + 1) % n];
    g[i] = scale * (d[i] - (prev + d[i] + next) / 3.0);
  }
  return g;
}

std::vector<double> savitzky_golay_weights(int window, int order) {
  check_window(static_cast<std::size_t>(window), window, order);
  const int half = window / 2;
  std::vector<double> weights(window);
  // Weight of sample s is the unit response: fit a basis vector and read the
  // constant term of the polynomial.
  std::vector<double> offs(window), vals(window, 0.0);
  for (int s = 0; s < window; ++s) offs[s] = static_cast<double>(s - half);
  for (int s = 0; s < window; ++s) {
    vals[s] = 1.0;
    weights[s] = fit_poly(offs, vals, order)[0];
    vals[s] = 0.0;
  }
  return weights;
}

std::vector<double> savitzky_golay(std::span<const double> y, int window, int order,
                                   bool cyclic) {
  const std::size_t n = y.size();
  check_window(n, window, order);
  const int half = window / 2;
  std::vector<double> out(n);

  if (cyclic) {
    const std::vector<double> w = savitzky_golay_weights(window, order);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int s = -half; s <= half; ++s) {
        const std::size_t idx = (i + static_cast<std::size_t>(s + static_cast<int>(n))) % n;
        acc += w[static_cast<std::size_t>(s + half)] * y[idx];
      }
      out[i] = acc;
    }
    return out;
  }

  // Open series: slide the window to stay in bounds and evaluate the fitted
  // polynomial at the point's offset from the window center.
  std::vector<double> offs(window), vals(window);
  for (std::size_t i = 0; i < n; ++i) {
    long start = static_cast<long>(i) - half;
    start = std::max(0L, std::min(start, static_cast<long>(n) - window));
    for (int s = 0; s < window; ++s) {
      offs[static_cast<std::size_t>(s)] = static_cast<double>(start + s - static_cast<long>(i));
      vals[static_cast<std::size_t>(s)] = y[static_cast<std::size_t>(start + s)];
    }
    out[i] = fit_poly(offs, vals, order)[0];
  }
  return out;
}

}  // namespace foilgen::smoothing
