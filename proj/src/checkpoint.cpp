#include "foilgen/checkpoint.hpp"

#include <fstream>

namespace foilgen::checkpoint {

namespace {

using nlohmann::ordered_json;

constexpr int kVersion = 1;

std::string activation_name(nn::Activation a) {
  return a == nn::Activation::sigmoid ? "sigmoid" : "identity";
}

nn::Activation activation_from_name(const std::string& s) {
  if (s == "sigmoid") return nn::Activation::sigmoid;
  if (s == "identity") return nn::Activation::identity;
  throw SchemaError("unknown activation '" + s + "'");
}

ordered_json config_to_json(const gan::GanConfig& c) {
  return ordered_json{{"noise_dim", c.noise_dim},
                      {"label_dim", c.label_dim},
                      {"out_dim", c.out_dim},
                      {"omega", c.omega},
                      {"lr", c.lr},
                      {"epochs", c.epochs},
                      {"batch_size", c.batch_size},
                      {"seed", c.seed},
                      {"gen_hidden", c.gen_hidden},
                      {"disc_hidden", c.disc_hidden},
                      {"disc_steps", c.disc_steps}};
}

gan::GanConfig config_from_json(const ordered_json& j) {
  gan::GanConfig c;
  c.noise_dim = j.at("noise_dim").get<int>();
  c.label_dim = j.at("label_dim").get<int>();
  c.out_dim = j.at("out_dim").get<int>();
  c.omega = j.at("omega").get<double>();
  c.lr = j.at("lr").get<double>();
  c.epochs = j.at("epochs").get<int>();
  c.batch_size = j.at("batch_size").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.gen_hidden = j.at("gen_hidden").get<std::vector<int>>();
  c.disc_hidden = j.at("disc_hidden").get<std::vector<int>>();
  c.disc_steps = j.at("disc_steps").get<int>();
  return c;
}

}  // namespace

ordered_json model_to_json(const nn::MlpModel& model, const nn::AdamState* adam) {
  ordered_json j;
  j["version"] = kVersion;
  j["layer_dims"] = model.layer_dims;
  j["hidden_activation"] = "relu";
  j["output_activation"] = activation_name(model.output_activation);
  ordered_json weights = ordered_json::array();
  for (const nn::Matrix& w : model.weights) weights.push_back(w.data);
  j["weights"] = std::move(weights);
  j["biases"] = model.biases;
  if (adam) {
    ordered_json a;
    a["step"] = adam->step;
    a["lr"] = adam->config.lr;
    a["beta1"] = adam->config.beta1;
    a["beta2"] = adam->config.beta2;
    a["eps"] = adam->config.eps;
    ordered_json mw = ordered_json::array(), vw = ordered_json::array();
    for (const nn::Matrix& m : adam->m_weights) mw.push_back(m.data);
    for (const nn::Matrix& v : adam->v_weights) vw.push_back(v.data);
    a["m_weights"] = std::move(mw);
    a["v_weights"] = std::move(vw);
    a["m_biases"] = adam->m_biases;
    a["v_biases"] = adam->v_biases;
    j["adam"] = std::move(a);
  }
  return j;
}

nn::MlpModel model_from_json(const ordered_json& j) {
  if (!j.contains("version") || j.at("version").get<int>() != kVersion) {
    throw SchemaError("unsupported network checkpoint version");
  }
  nn::MlpModel m;
  m.layer_dims = j.at("layer_dims").get<std::vector<int>>();
  if (m.layer_dims.size() < 2) throw SchemaError("checkpoint needs at least 2 layer dims");
  m.output_activation = activation_from_name(j.at("output_activation").get<std::string>());
  const auto& weights = j.at("weights");
  const auto& biases = j.at("biases");
  if (weights.size() != m.layer_dims.size() - 1 || biases.size() != weights.size()) {
    throw SchemaError("checkpoint weight/bias count does not match layer dims");
  }
  for (std::size_t k = 0; k + 1 < m.layer_dims.size(); ++k) {
    nn::Matrix w(m.layer_dims[k + 1], m.layer_dims[k]);
    const auto flat = weights.at(k).get<std::vector<double>>();
    if (flat.size() != w.data.size()) {
      throw SchemaError("layer " + std::to_string(k) + " weight array has " +
                        std::to_string(flat.size()) + " values, expected " +
                        std::to_string(w.data.size()));
    }
    w.data = flat;
    m.weights.push_back(std::move(w));
    const auto b = biases.at(k).get<std::vector<double>>();
    if (b.size() != static_cast<std::size_t>(m.layer_dims[k + 1])) {
      throw SchemaError("layer " + std::to_string(k) + " bias length mismatch");
    }
    m.biases.push_back(b);
  }
  return m;
}

void save_gan(const gan::GanModel& model, const std::filesystem::path& path) {
  ordered_json j;
  j["format"] = "foilgen-checkpoint";
  j["version"] = kVersion;
  j["config"] = config_to_json(model.config);
  j["generator"] = model_to_json(model.generator);
  j["discriminator"] = model_to_json(model.discriminator);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path.string() + "'");
  out << j.dump(1) << '\n';
  if (!out) throw SchemaError("failed writing '" + path.string() + "'");
}

gan::GanModel load_gan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path.string() + "'");
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (j.value("format", "") != "foilgen-checkpoint" || j.value("version", -1) != kVersion) {
    throw SchemaError("'" + path.string() + "' is not a version-" + std::to_string(kVersion) +
                      " foilgen checkpoint");
  }
  gan::GanModel model;
  model.config = config_from_json(j.at("config"));
  model.generator = model_from_json(j.at("generator"));
  model.discriminator = model_from_json(j.at("discriminator"));
  return model;
}

}  // namespace foilgen::checkpoint
