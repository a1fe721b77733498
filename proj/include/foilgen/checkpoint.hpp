#pragma once

#include <filesystem>

#include <json.hpp>

#include "foilgen/gan.hpp"
#include "foilgen/nn.hpp"

namespace foilgen::checkpoint {

// Versioned JSON form of one network: layer_dims, output activation, flat
// row-major weight arrays and biases, optional Adam state. Floats are
// emitted in shortest round-trip decimal form, so serialization is exact.
nlohmann::ordered_json model_to_json(const nn::MlpModel& model,
                                     const nn::AdamState* adam = nullptr);
nn::MlpModel model_from_json(const nlohmann::ordered_json& j);

// Whole-GAN checkpoint: the two network objects plus the config, in one
// versioned document.
void save_gan(const gan::GanModel& model, const std::filesystem::path& path);
gan::GanModel load_gan(const std::filesystem::path& path);

}  // namespace foilgen::checkpoint
