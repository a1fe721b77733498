#include "foilgen/nn.hpp"

#include <cmath>

namespace foilgen::nn {

namespace {

constexpr double kProbClamp = 1e-7;

void apply_activation(Activation act, std::vector<double>& v) {
  switch (act) {
    case Activation::identity:
      return;
    case Activation::sigmoid:
      for (double& x : v) x = 1.0 / (1.0 + std::exp(-x));
      return;
  }
}

void check_shapes_match(const MlpModel& m, const Gradients& g) {
  if (g.weights.size() != m.weights.size() || g.biases.size() != m.biases.size()) {
    throw ShapeError("gradient layer count does not match model");
  }
  for (std::size_t k = 0; k < m.weights.size(); ++k) {
    if (g.weights[k].rows != m.weights[k].rows || g.weights[k].cols != m.weights[k].cols ||
        g.biases[k].size() != m.biases[k].size()) {
      throw ShapeError("gradient shape mismatch at layer " + std::to_string(k));
    }
  }
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const Matrix& w : weights) n += w.data.size();
  for (const auto& b : biases) n += b.size();
  return n;
}

Gradients Gradients::zeros_like(const MlpModel& m) {
  Gradients g;
  g.weights.reserve(m.weights.size());
  g.biases.reserve(m.biases.size());
  for (const Matrix& w : m.weights) g.weights.emplace_back(w.rows, w.cols);
  for (const auto& b : m.biases) g.biases.emplace_back(b.size(), 0.0);
  g.input.assign(static_cast<std::size_t>(m.input_dim()), 0.0);
  return g;
}

void Gradients::accumulate(const Gradients& other, double s) {
  if (other.weights.size() != weights.size()) throw ShapeError("gradient accumulate mismatch");
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (other.weights[k].data.size() != weights[k].data.size() ||
        other.biases[k].size() != biases[k].size()) {
      throw ShapeError("gradient accumulate mismatch at layer " + std::to_string(k));
    }
    for (std::size_t i = 0; i < weights[k].data.size(); ++i) {
      weights[k].data[i] += s * other.weights[k].data[i];
    }
    for (std::size_t i = 0; i < biases[k].size(); ++i) biases[k][i] += s * other.biases[k][i];
  }
  if (other.input.size() == input.size()) {
    for (std::size_t i = 0; i < input.size(); ++i) input[i] += s * other.input[i];
  }
}

void Gradients::scale(double s) {
  for (Matrix& w : weights) {
    for (double& x : w.data) x *= s;
  }
  for (auto& b : biases) {
    for (double& x : b) x *= s;
  }
  for (double& x : input) x *= s;
}

std::vector<double> forward(const MlpModel& m, std::span<const double> input,
                            ForwardCache* cache) {
  if (static_cast<int>(input.size()) != m.input_dim()) {
    throw ShapeError("input length " + std::to_string(input.size()) + " != model input dim " +
                     std::to_string(m.input_dim()));
  }
  const std::size_t layers = m.layer_count();
  if (cache) {
    cache->pre.assign(layers, {});
    cache->act.assign(layers + 1, {});
    cache->act[0].assign(input.begin(), input.end());
  }
  std::vector<double> a(input.begin(), input.end());
  std::vector<double> z;
  for (std::size_t k = 0; k < layers; ++k) {
    const Matrix& w = m.weights[k];
    const std::vector<double>& b = m.biases[k];
    z.assign(static_cast<std::size_t>(w.rows), 0.0);
    for (int r = 0; r < w.rows; ++r) {
      const double* wrow = &w.data[static_cast<std::size_t>(r) * w.cols];
      double acc = b[static_cast<std::size_t>(r)];
      for (int c = 0; c < w.cols; ++c) acc += wrow[c] * a[static_cast<std::size_t>(c)];
      z[static_cast<std::size_t>(r)] = acc;
    }
    if (cache) cache->pre[k] = z;
    const bool last = (k + 1 == layers);
    if (last) {
      apply_activation(m.output_activation, z);
    } else {
      for (double& x : z) x = x > 0.0 ? x : 0.0;  // ReLU
    }
    a = z;
    if (cache) cache->act[k + 1] = a;
  }
  return a;
}

Gradients backward(const MlpModel& m, const ForwardCache& cache,
                   std::span<const double> out_grad) {
  const std::size_t layers = m.layer_count();
  if (cache.act.size() != layers + 1 || cache.pre.size() != layers) {
    throw ShapeError("forward cache does not match model");
  }
  if (static_cast<int>(out_grad.size()) != m.output_dim()) {
    throw ShapeError("output gradient length " + std::to_string(out_grad.size()) +
                     " != model output dim " + std::to_string(m.output_dim()));
  }
  Gradients g = Gradients::zeros_like(m);
  std::vector<double> da(out_grad.begin(), out_grad.end());
  std::vector<double> dz;
  for (std::size_t k = layers; k-- > 0;) {
    const Matrix& w = m.weights[k];
    const std::vector<double>& a_in = cache.act[k];
    const std::vector<double>& pre = cache.pre[k];
    const bool last = (k + 1 == layers);

    dz.assign(pre.size(), 0.0);
    if (last) {
      switch (m.output_activation) {
        case Activation::identity:
          dz = da;
          break;
        case Activation::sigmoid: {
          const std::vector<double>& out = cache.act[k + 1];
          for (std::size_t i = 0; i < dz.size(); ++i) {
            dz[i] = da[i] * out[i] * (1.0 - out[i]);
          }
          break;
        }
      }
    } else {
      // ReLU subgradient, 0 at exactly 0.
      for (std::size_t i = 0; i < dz.size(); ++i) dz[i] = pre[i] > 0.0 ? da[i] : 0.0;
    }

    Matrix& dw = g.weights[k];
    std::vector<double>& db = g.biases[k];
    for (int r = 0; r < w.rows; ++r) {
      const double dzr = dz[static_cast<std::size_t>(r)];
      db[static_cast<std::size_t>(r)] = dzr;
      double* dwrow = &dw.data[static_cast<std::size_t>(r) * w.cols];
      for (int c = 0; c < w.cols; ++c) dwrow[c] = dzr * a_in[static_cast<std::size_t>(c)];
    }

    da.assign(static_cast<std::size_t>(w.cols), 0.0);
    for (int r = 0; r < w.rows; ++r) {
      const double dzr = dz[static_cast<std::size_t>(r)];
      const double* wrow = &w.data[static_cast<std::size_t>(r) * w.cols];
      for (int c = 0; c < w.cols; ++c) da[static_cast<std::size_t>(c)] += dzr * wrow[c];
    }
  }
  g.input = da;
  return g;
}

BceResult bce_loss(double p, double target) {
  const double pc = std::min(1.0 - kProbClamp, std::max(kProbClamp, p));
  BceResult r;
  r.loss = -(target * std::log(pc) + (1.0 - target) * std::log(1.0 - pc));
  r.dloss_dp = -target / pc + (1.0 - target) / (1.0 - pc);
  return r;
}

AdamState AdamState::for_model(const MlpModel& m, const AdamConfig& config) {
  AdamState s;
  s.config = config;
  for (const Matrix& w : m.weights) {
    s.m_weights.emplace_back(w.rows, w.cols);
    s.v_weights.emplace_back(w.rows, w.cols);
  }
  for (const auto& b : m.biases) {
    s.m_biases.emplace_back(b.size(), 0.0);
    s.v_biases.emplace_back(b.size(), 0.0);
  }
  return s;
}

void adam_step(AdamState& state, MlpModel& model, const Gradients& grads) {
  check_shapes_match(model, grads);
  if (state.m_weights.size() != model.weights.size()) {
    throw ShapeError("Adam state does not match model");
  }
  state.step += 1;
  const AdamConfig& c = state.config;
  const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));

  auto update = [&](double& param, double grad, double& m, double& v) {
    m = c.beta1 * m + (1.0 - c.beta1) * grad;
    v = c.beta2 * v + (1.0 - c.beta2) * grad * grad;
    const double mhat = m / bc1;
    const double vhat = v / bc2;
    param -= c.lr * mhat / (std::sqrt(vhat) + c.eps);
    if (!std::isfinite(param)) {
      throw NumericError("Adam update produced a non-finite parameter at step " +
                         std::to_string(state.step));
    }
  };

  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    Matrix& w = model.weights[k];
    for (std::size_t i = 0; i < w.data.size(); ++i) {
      update(w.data[i], grads.weights[k].data[i], state.m_weights[k].data[i],
             state.v_weights[k].data[i]);
    }
    auto& b = model.biases[k];
    for (std::size_t i = 0; i < b.size(); ++i) {
      update(b[i], grads.biases[k][i], state.m_biases[k][i], state.v_biases[k][i]);
    }
  }
}

MlpModel init_model(const std::vector<int>& layer_dims, Activation output_activation,
                    rng::SplitMix64& gen) {
  if (layer_dims.size() < 2) {
    throw ShapeError("a model needs at least input and output dims");
  }
  for (int d : layer_dims) {
    if (d <= 0) throw ShapeError("layer dims must be positive");
  }
  MlpModel m;
  m.layer_dims = layer_dims;
  m.output_activation = output_activation;
  for (std::size_t k = 0; k + 1 < layer_dims.size(); ++k) {
    const int fan_in = layer_dims[k];
    const int fan_out = layer_dims[k + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    Matrix w(fan_out, fan_in);
    for (double& x : w.data) x = gen.next_uniform(-limit, limit);
    m.weights.push_back(std::move(w));
    m.biases.emplace_back(static_cast<std::size_t>(fan_out), 0.0);
  }
  return m;
}

}  // namespace foilgen::nn
