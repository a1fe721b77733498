#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "foilgen/dataset.hpp"
#include "foilgen/geometry.hpp"
#include "foilgen/nn.hpp"
#include "foilgen/rng.hpp"

namespace foilgen::gan {

struct GanConfig {
  int noise_dim = 128;
  int label_dim = 6;
  int out_dim = geometry::kCanonicalSize;
  double omega = 10.0;  // 0 recovers the plain GAN baseline
  double lr = 1e-4;
  int epochs = 30000;
  int batch_size = 64;
  std::uint64_t seed = 0;
  std::vector<int> gen_hidden = {256, 256, 256};
  std::vector<int> disc_hidden = {256, 256};
  int disc_steps = 1;  // discriminator updates per generator update

  bool operator==(const GanConfig&) const = default;
};

// Generator maps noise+label to out_dim coordinates (identity output);
// discriminator maps coordinates+label to one probability (sigmoid output).
struct GanModel {
  nn::MlpModel generator;
  nn::MlpModel discriminator;
  GanConfig config;

  bool operator==(const GanModel&) const = default;
};

struct EpochStats {
  double g_loss = 0.0;
  double d_loss = 0.0;
  double ce = 0.0;      // cross-entropy component of the generator loss
  double smooth = 0.0;  // smoothing component of the generator loss
};

using TrainReport = std::vector<EpochStats>;

// Fresh models from the config; consumes the generator's stream for the
// generator weights first, then the discriminator's.
GanModel init_gan(const GanConfig& config, rng::SplitMix64& gen);

// One generated curve for a fixed label: G(noise ~ N(0,1)^noise_dim ++ label).
// Requires out_dim == 38.
geometry::CanonicalAirfoil generate(const GanModel& model, const dataset::LabelVector& label,
                                    rng::SplitMix64& gen);

// n draws with the encoded class label held fixed.
std::vector<geometry::CanonicalAirfoil> sample_class(const GanModel& model,
                                                     const dataset::ClassLabel& label, int n,
                                                     rng::SplitMix64& gen);

struct DiscriminatorLoss {
  double loss = 0.0;
  nn::Gradients grads;  // with respect to discriminator parameters
};

// Mean binary cross-entropy over both halves of the batch: target 1 for
// real rows, 0 for fake rows. Labels are shared between the halves.
DiscriminatorLoss discriminator_loss(const GanModel& model,
                                     std::span<const std::vector<double>> real,
                                     std::span<const std::vector<double>> fake,
                                     std::span<const dataset::LabelVector> labels);

struct GeneratorLoss {
  double loss = 0.0;    // ce + smooth
  double ce = 0.0;      // mean BCE of D(G(z, l), l) against target 1
  double smooth = 0.0;  // batch mean of the smoothing loss over generated curves
  nn::Gradients grads;  // with respect to generator parameters only
};

// Non-saturating generator objective plus the smoothing penalty. Gradients
// flow through the discriminator into the generator for the cross-entropy
// part and directly through the smoothing loss for the rest; discriminator
// parameters are left untouched.
GeneratorLoss generator_loss(const GanModel& model,
                             std::span<const std::vector<double>> noise,
                             std::span<const dataset::LabelVector> labels, double omega);

// Alternating training: per batch, disc_steps discriminator updates (real +
// fresh fakes) followed by one generator update. Batches are reshuffled
// every epoch from the seeded generator. Per-sample RNG consumption order
// (init G, init D, then per epoch: shuffle, then per batch: fake noise for
// each discriminator step, then generator noise) is part of the determinism
// contract. Throws NumericError naming the epoch and component if a loss
// becomes non-finite.
std::pair<GanModel, TrainReport> train(const dataset::LabeledDataset& data,
                                       const GanConfig& config);

// TrainReport CSV: header epoch,g_loss,d_loss,ce,smooth.
void save_train_report(const TrainReport& report, const std::filesystem::path& path);
TrainReport load_train_report(const std::filesystem::path& path);

}  // namespace foilgen::gan
