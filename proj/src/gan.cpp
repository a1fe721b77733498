#include "foilgen/gan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "foilgen/csv.hpp"
#include "foilgen/smoothing.hpp"

namespace foilgen::gan {

namespace {

std::vector<double> concat_label(std::span<const double> head, const dataset::LabelVector& label) {
  std::vector<double> out;
  out.reserve(head.size() + label.v.size());
  out.insert(out.end(), head.begin(), head.end());
  out.insert(out.end(), label.v.begin(), label.v.end());
  return out;
}

std::vector<double> draw_noise(int dim, rng::SplitMix64& gen) {
  std::vector<double> z(static_cast<std::size_t>(dim));
  for (double& v : z) v = gen.next_gaussian();
  return z;
}

void check_model(const GanModel& model) {
  const GanConfig& c = model.config;
  if (model.generator.input_dim() != c.noise_dim + c.label_dim ||
      model.generator.output_dim() != c.out_dim) {
    throw ShapeError("generator dims do not match config");
  }
  if (model.discriminator.input_dim() != c.out_dim + c.label_dim ||
      model.discriminator.output_dim() != 1) {
    throw ShapeError("discriminator dims do not match config");
  }
}

}  // namespace

GanModel init_gan(const GanConfig& config, rng::SplitMix64& gen) {
  if (config.noise_dim <= 0 || config.label_dim <= 0 || config.out_dim <= 0) {
    throw ShapeError("GAN dims must be positive");
  }
  if (config.omega < 0.0) throw DomainError("omega must be nonnegative");
  GanModel model;
  model.config = config;

  std::vector<int> g_dims;
  g_dims.push_back(config.noise_dim + config.label_dim);
  g_dims.insert(g_dims.end(), config.gen_hidden.begin(), config.gen_hidden.end());
  g_dims.push_back(config.out_dim);
  model.generator = nn::init_model(g_dims, nn::Activation::identity, gen);

  std::vector<int> d_dims;
  d_dims.push_back(config.out_dim + config.label_dim);
  d_dims.insert(d_dims.end(), config.disc_hidden.begin(), config.disc_hidden.end());
  d_dims.push_back(1);
  model.discriminator = nn::init_model(d_dims, nn::Activation::sigmoid, gen);
  return model;
}

geometry::CanonicalAirfoil generate(const GanModel& model, const dataset::LabelVector& label,
                                    rng::SplitMix64& gen) {
  check_model(model);
  if (model.config.out_dim != geometry::kCanonicalSize) {
    throw ShapeError("generate needs out_dim == " + std::to_string(geometry::kCanonicalSize));
  }
  const std::vector<double> z = draw_noise(model.config.noise_dim, gen);
  const std::vector<double> y = nn::forward(model.generator, concat_label(z, label));
  geometry::CanonicalAirfoil a;
  std::copy(y.begin(), y.end(), a.y.begin());
  return a;
}

std::vector<geometry::CanonicalAirfoil> sample_class(const GanModel& model,
                                                     const dataset::ClassLabel& label, int n,
                                                     rng::SplitMix64& gen) {
  if (n < 1) throw DomainError("sample count must be at least 1");
  const dataset::LabelVector v = dataset::encode_label(label);
  std::vector<geometry::CanonicalAirfoil> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(generate(model, v, gen));
  return out;
}

DiscriminatorLoss discriminator_loss(const GanModel& model,
                                     std::span<const std::vector<double>> real,
                                     std::span<const std::vector<double>> fake,
                                     std::span<const dataset::LabelVector> labels) {
  check_model(model);
  if (real.empty() || real.size() != fake.size() || real.size() != labels.size()) {
    throw ShapeError("discriminator batches must be nonempty and equally sized");
  }
  const double weight = 1.0 / (2.0 * static_cast<double>(real.size()));
  DiscriminatorLoss result;
  result.grads = nn::Gradients::zeros_like(model.discriminator);
  nn::ForwardCache cache;
  for (std::size_t i = 0; i < real.size(); ++i) {
    for (int half = 0; half < 2; ++half) {
      const std::vector<double>& sample = half == 0 ? real[i] : fake[i];
      const double target = half == 0 ? 1.0 : 0.0;
      const std::vector<double> out =
          nn::forward(model.discriminator, concat_label(sample, labels[i]), &cache);
      const nn::BceResult bce = nn::bce_loss(out[0], target);
      result.loss += weight * bce.loss;
      const double dldp[1] = {bce.dloss_dp};
      result.grads.accumulate(nn::backward(model.discriminator, cache, dldp), weight);
    }
  }
  return result;
}

GeneratorLoss generator_loss(const GanModel& model,
                             std::span<const std::vector<double>> noise,
                             std::span<const dataset::LabelVector> labels, double omega) {
  check_model(model);
  if (omega < 0.0) throw DomainError("omega must be nonnegative");
  if (noise.empty() || noise.size() != labels.size()) {
    throw ShapeError("generator batches must be nonempty and equally sized");
  }
  const double weight = 1.0 / static_cast<double>(noise.size());
  GeneratorLoss result;
  result.grads = nn::Gradients::zeros_like(model.generator);
  nn::ForwardCache g_cache, d_cache;
  for (std::size_t i = 0; i < noise.size(); ++i) {
    const std::vector<double> y =
        nn::forward(model.generator, concat_label(noise[i], labels[i]), &g_cache);
    const std::vector<double> out =
        nn::forward(model.discriminator, concat_label(y, labels[i]), &d_cache);

    // Non-saturating objective: push D(G(z, l), l) toward 1.
    const nn::BceResult bce = nn::bce_loss(out[0], 1.0);
    result.ce += weight * bce.loss;
    result.smooth += weight * smoothing::smoothing_loss(y, omega);

    const double dldp[1] = {bce.dloss_dp};
    const nn::Gradients d_back = nn::backward(model.discriminator, d_cache, dldp);
    std::vector<double> dy(d_back.input.begin(),
                           d_back.input.begin() + model.config.out_dim);
    if (omega != 0.0) {
      const std::vector<double> sg = smoothing::smoothing_loss_grad(y, omega);
      for (std::size_t k = 0; k < dy.size(); ++k) dy[k] += sg[k];
    }
    result.grads.accumulate(nn::backward(model.generator, g_cache, dy), weight);
  }
  result.loss = result.ce + result.smooth;
  return result;
}

std::pair<GanModel, TrainReport> train(const dataset::LabeledDataset& data,
                                       const GanConfig& config) {
  if (data.entries.empty()) throw InsufficientDataError("training dataset is empty");
  if (config.batch_size < 1) throw DomainError("batch size must be at least 1");
  if (config.epochs < 0) throw DomainError("epoch count must be nonnegative");
  if (config.disc_steps < 1) throw DomainError("disc_steps must be at least 1");

  rng::SplitMix64 gen(config.seed);
  GanModel model = init_gan(config, gen);
  nn::AdamState g_adam = nn::AdamState::for_model(model.generator, {.lr = config.lr});
  nn::AdamState d_adam = nn::AdamState::for_model(model.discriminator, {.lr = config.lr});

  const std::size_t n = data.entries.size();
  std::vector<std::vector<double>> real_all(n);
  std::vector<dataset::LabelVector> label_all(n);
  for (std::size_t i = 0; i < n; ++i) {
    real_all[i].assign(data.entries[i].shape.y.begin(), data.entries[i].shape.y.end());
    label_all[i] = dataset::encode_label(data.entries[i].label);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainReport report;
  report.reserve(static_cast<std::size_t>(config.epochs));

  const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);
  std::vector<std::vector<double>> real_batch, fake_batch, noise_batch;
  std::vector<dataset::LabelVector> labels_batch;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng::shuffle(order, gen);
    double g_sum = 0.0, d_sum = 0.0, ce_sum = 0.0, smooth_sum = 0.0;
    double g_weight = 0.0, d_weight = 0.0;

    for (std::size_t start = 0; start < n; start += batch_size) {
      const std::size_t count = std::min(batch_size, n - start);
      real_batch.clear();
      labels_batch.clear();
      for (std::size_t i = 0; i < count; ++i) {
        real_batch.push_back(real_all[order[start + i]]);
        labels_batch.push_back(label_all[order[start + i]]);
      }

      for (int ds = 0; ds < config.disc_steps; ++ds) {
        fake_batch.clear();
        for (std::size_t i = 0; i < count; ++i) {
          const std::vector<double> z = draw_noise(config.noise_dim, gen);
          fake_batch.push_back(
              nn::forward(model.generator, concat_label(z, labels_batch[i])));
        }
        DiscriminatorLoss d = discriminator_loss(model, real_batch, fake_batch, labels_batch);
        if (!std::isfinite(d.loss)) {
          throw NumericError("epoch " + std::to_string(epoch) +
                             ": discriminator loss is non-finite");
        }
        nn::adam_step(d_adam, model.discriminator, d.grads);
        d_sum += d.loss * static_cast<double>(count);
        d_weight += static_cast<double>(count);
      }

      noise_batch.clear();
      for (std::size_t i = 0; i < count; ++i) {
        noise_batch.push_back(draw_noise(config.noise_dim, gen));
      }
      GeneratorLoss g = generator_loss(model, noise_batch, labels_batch, config.omega);
      if (!std::isfinite(g.loss)) {
        throw NumericError("epoch " + std::to_string(epoch) +
                           ": generator loss is non-finite (ce=" + csv::format_double(g.ce) +
                           ", smooth=" + csv::format_double(g.smooth) + ")");
      }
      nn::adam_step(g_adam, model.generator, g.grads);
      g_sum += g.loss * static_cast<double>(count);
      ce_sum += g.ce * static_cast<double>(count);
      smooth_sum += g.smooth * static_cast<double>(count);
      g_weight += static_cast<double>(count);
    }

    report.push_back({g_sum / g_weight, d_sum / d_weight, ce_sum / g_weight,
                      smooth_sum / g_weight});
  }
  return {std::move(model), std::move(report)};
}

void save_train_report(const TrainReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path.string() + "'");
  out << "epoch,g_loss,d_loss,ce,smooth\n";
  for (std::size_t e = 0; e < report.size(); ++e) {
    out << e << ',' << csv::format_double(report[e].g_loss) << ','
        << csv::format_double(report[e].d_loss) << ',' << csv::format_double(report[e].ce)
        << ',' << csv::format_double(report[e].smooth) << '\n';
  }
  if (!out) throw SchemaError("failed writing '" + path.string() + "'");
}

TrainReport load_train_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto lines = csv::split_lines(text);
  if (lines.empty() || csv::trim(lines[0]) != "epoch,g_loss,d_loss,ce,smooth") {
    throw SchemaError("'" + path.string() + "': expected header epoch,g_loss,d_loss,ce,smooth");
  }
  TrainReport report;
  for (std::size_t row = 1; row < lines.size(); ++row) {
    const std::string_view line = csv::trim(lines[row]);
    if (line.empty()) continue;
    const auto fields = csv::split_fields(line);
    const int line_no = static_cast<int>(row) + 1;
    if (fields.size() != 5) {
      throw SchemaError("'" + path.string() + "' line " + std::to_string(line_no) +
                        ": expected 5 columns");
    }
    report.push_back({csv::parse_double(fields[1], line_no), csv::parse_double(fields[2], line_no),
                      csv::parse_double(fields[3], line_no),
                      csv::parse_double(fields[4], line_no)});
  }
  return report;
}

}  // namespace foilgen::gan
