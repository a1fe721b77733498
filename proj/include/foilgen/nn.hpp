#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "foilgen/errors.hpp"
#include "foilgen/rng.hpp"

namespace foilgen::nn {

// Dense row-major matrix of doubles.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const Matrix&) const = default;
};

enum class Activation { identity, sigmoid };

// Fully connected stack: affine layers with ReLU between them and the
// configured activation on the output. Layer k maps layer_dims[k] to
// layer_dims[k+1] via weights[k] (layer_dims[k+1] x layer_dims[k]) and
// biases[k].
struct MlpModel {
  std::vector<int> layer_dims;
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
  Activation output_activation = Activation::identity;

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }
  std::size_t layer_count() const { return weights.size(); }
  std::size_t parameter_count() const;

  bool operator==(const MlpModel&) const = default;
};

// Everything backward needs from a forward pass: the input plus each
// layer's pre-activation and activation.
struct ForwardCache {
  std::vector<std::vector<double>> pre;  // pre[k] = W_k a_k + b_k
  std::vector<std::vector<double>> act;  // act[0] = input, act[k+1] = activation(pre[k])
};

// Per-parameter gradients plus the gradient with respect to the input.
struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
  std::vector<double> input;

  static Gradients zeros_like(const MlpModel& m);
  // this += other * scale; shapes must match.
  void accumulate(const Gradients& other, double scale);
  void scale(double s);
};

// Runs the network. When cache is non-null it is filled for backward.
// Throws ShapeError when input length differs from layer_dims[0].
std::vector<double> forward(const MlpModel& m, std::span<const double> input,
                            ForwardCache* cache = nullptr);

// Exact reverse-mode gradients for one sample. out_grad is dLoss/dOutput at
// the cached forward's output. The ReLU subgradient at exactly 0 is 0.
Gradients backward(const MlpModel& m, const ForwardCache& cache,
                   std::span<const double> out_grad);

struct BceResult {
  double loss = 0.0;
  double dloss_dp = 0.0;
};

// Binary cross-entropy of a probability against a 0/1 target. p is clamped
// to [1e-7, 1 - 1e-7] and the gradient is evaluated at the clamped value.
BceResult bce_loss(double p, double target);

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First/second moment accumulators mirroring a model's parameters.
struct AdamState {
  AdamConfig config;
  long step = 0;
  std::vector<Matrix> m_weights, v_weights;
  std::vector<std::vector<double>> m_biases, v_biases;

  static AdamState for_model(const MlpModel& m, const AdamConfig& config = {});
};

// One bias-corrected Adam update of every parameter in place. Throws
// ShapeError on mismatched gradients and NumericError if any updated
// parameter would be non-finite.
void adam_step(AdamState& state, MlpModel& model, const Gradients& grads);

// He-uniform initialization: weights uniform in +-sqrt(6 / fan_in), biases
// zero. Consumes the generator layer by layer in row-major order.
MlpModel init_model(const std::vector<int>& layer_dims, Activation output_activation,
                    rng::SplitMix64& gen);

}  // namespace foilgen::nn
