// src/config.cc

// Copyright 2026  Spoofkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "spoofkit/config.h"

#include <fstream>

#include <json.hpp>

#include "spoofkit/error.h"

namespace spoofkit {

using nlohmann::json;

namespace {

json ConfigToJsonDoc(const RunConfig &c) {
  return json{
      {"data",
       {{"n_genuine", c.data.n_genuine},
        {"n_spoof", c.data.n_spoof},
        {"n_partial", c.data.n_partial},
        {"duration_s_min", c.data.duration_s_min},
        {"duration_s_max", c.data.duration_s_max},
        {"sample_rate_hz", c.data.sample_rate_hz},
        {"seed", c.data.seed}}},
      {"extractor",
       {{"num_layers", c.extractor.num_layers},
        {"feature_dim", c.extractor.feature_dim},
        {"init_seed", c.extractor.init_seed}}},
      {"model",
       {{"hidden_dim", c.model.hidden_dim},
        {"attn_dim", c.model.attn_dim},
        {"embed_dim", c.model.embed_dim}}},
      {"loss",
       {{"scale", c.loss.scale},
        {"margin_genuine", c.loss.margin_genuine},
        {"margin_spoof", c.loss.margin_spoof}}},
      {"train",
       {{"learning_rate", c.train.learning_rate},
        {"beta1", c.train.beta1},
        {"beta2", c.train.beta2},
        {"eps", c.train.eps},
        {"dropout", c.train.dropout},
        {"batch_size", c.train.batch_size},
        {"accumulation_steps", c.train.accumulation_steps},
        {"patience_epochs", c.train.patience_epochs},
        {"max_epochs", c.train.max_epochs},
        {"seed", c.train.seed}}},
      {"augment",
       {{"enabled", c.augment.enabled},
        {"fir_prob", c.augment.fir_prob},
        {"fir_band", c.augment.fir_band},
        {"nb_cutoff_hz_min", c.augment.nb_cutoff_hz_min},
        {"nb_cutoff_hz_max", c.augment.nb_cutoff_hz_max},
        {"wb_cutoff_hz_min", c.augment.wb_cutoff_hz_min},
        {"wb_cutoff_hz_max", c.augment.wb_cutoff_hz_max},
        {"num_taps_min", c.augment.num_taps_min},
        {"num_taps_max", c.augment.num_taps_max},
        {"splice_fraction", c.augment.splice_fraction},
        {"crossfade_ms", c.augment.crossfade_ms}}},
      {"eval", {{"write_det_points", c.eval.write_det_points}}}};
}

bool SameKind(const json &a, const json &b) {
  if (a.is_number() && b.is_number()) return true;
  return a.type() == b.type();
}

void OverlayChecked(json *base, const json &user, const std::string &prefix) {
  if (!user.is_object())
    throw ConfigError("config section '" + prefix + "' must be a JSON object");
  for (const auto &[key, value] : user.items()) {
    std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!base->contains(key)) throw ConfigError("unknown config key: " + path);
    json &slot = (*base)[key];
    if (slot.is_object()) {
      OverlayChecked(&slot, value, path);
    } else {
      if (!SameKind(slot, value))
        throw ConfigError("wrong type for config key " + path + " (expected " +
                          std::string(slot.type_name()) + ")");
      slot = value;
    }
  }
}

void ApplyOverride(json *doc, const std::string &assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like section.key=value: " + assignment);
  std::string path = assignment.substr(0, eq);
  std::string value_str = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(value_str);
  } catch (const json::exception &) {
    value = value_str;  // bare strings need no quotes
  }

  json *slot = doc;
  std::size_t pos = 0;
  while (true) {
    auto dot = path.find('.', pos);
    std::string key = path.substr(pos, dot == std::string::npos
                                           ? std::string::npos
                                           : dot - pos);
    if (!slot->contains(key))
      throw ConfigError("unknown config key: " + path);
    slot = &(*slot)[key];
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  if (slot->is_object())
    throw ConfigError("cannot override a whole section: " + path);
  if (!SameKind(*slot, value))
    throw ConfigError("wrong type for config key " + path + " (expected " +
                      std::string(slot->type_name()) + ")");
  *slot = value;
}

void Require(bool ok, const std::string &msg) {
  if (!ok) throw ConfigError(msg);
}

RunConfig FromJsonDoc(const json &j) {
  RunConfig c;
  const json &data = j.at("data");
  c.data.n_genuine = data.at("n_genuine").get<int>();
  c.data.n_spoof = data.at("n_spoof").get<int>();
  c.data.n_partial = data.at("n_partial").get<int>();
  c.data.duration_s_min = data.at("duration_s_min").get<double>();
  c.data.duration_s_max = data.at("duration_s_max").get<double>();
  c.data.sample_rate_hz = data.at("sample_rate_hz").get<int>();
  c.data.seed = data.at("seed").get<std::uint64_t>();
  const json &ext = j.at("extractor");
  c.extractor.num_layers = ext.at("num_layers").get<int>();
  c.extractor.feature_dim = ext.at("feature_dim").get<int>();
  c.extractor.init_seed = ext.at("init_seed").get<std::uint64_t>();
  c.extractor.sample_rate_hz = c.data.sample_rate_hz;
  const json &model = j.at("model");
  c.model.hidden_dim = model.at("hidden_dim").get<std::size_t>();
  c.model.attn_dim = model.at("attn_dim").get<std::size_t>();
  c.model.embed_dim = model.at("embed_dim").get<std::size_t>();
  const json &loss = j.at("loss");
  c.loss.scale = loss.at("scale").get<double>();
  c.loss.margin_genuine = loss.at("margin_genuine").get<double>();
  c.loss.margin_spoof = loss.at("margin_spoof").get<double>();
  const json &train = j.at("train");
  c.train.learning_rate = train.at("learning_rate").get<double>();
  c.train.beta1 = train.at("beta1").get<double>();
  c.train.beta2 = train.at("beta2").get<double>();
  c.train.eps = train.at("eps").get<double>();
  c.train.dropout = train.at("dropout").get<double>();
  c.train.batch_size = train.at("batch_size").get<int>();
  c.train.accumulation_steps = train.at("accumulation_steps").get<int>();
  c.train.patience_epochs = train.at("patience_epochs").get<int>();
  c.train.max_epochs = train.at("max_epochs").get<int>();
  c.train.seed = train.at("seed").get<std::uint64_t>();
  const json &aug = j.at("augment");
  c.augment.enabled = aug.at("enabled").get<bool>();
  c.augment.fir_prob = aug.at("fir_prob").get<double>();
  c.augment.fir_band = aug.at("fir_band").get<std::string>();
  c.augment.nb_cutoff_hz_min = aug.at("nb_cutoff_hz_min").get<double>();
  c.augment.nb_cutoff_hz_max = aug.at("nb_cutoff_hz_max").get<double>();
  c.augment.wb_cutoff_hz_min = aug.at("wb_cutoff_hz_min").get<double>();
  c.augment.wb_cutoff_hz_max = aug.at("wb_cutoff_hz_max").get<double>();
  c.augment.num_taps_min = aug.at("num_taps_min").get<int>();
  c.augment.num_taps_max = aug.at("num_taps_max").get<int>();
  c.augment.splice_fraction = aug.at("splice_fraction").get<double>();
  c.augment.crossfade_ms = aug.at("crossfade_ms").get<double>();
  const json &eval = j.at("eval");
  c.eval.write_det_points = eval.at("write_det_points").get<bool>();

  Require(c.data.sample_rate_hz >= 80, "data.sample_rate_hz too low");
  Require(c.data.n_genuine >= 0 && c.data.n_spoof >= 0 && c.data.n_partial >= 0,
          "data counts must be non-negative");
  Require(c.data.duration_s_min > 0.05 &&
              c.data.duration_s_max >= c.data.duration_s_min,
          "data durations must exceed 0.05 s and be ordered");
  Require(c.extractor.num_layers >= 1, "extractor.num_layers must be >= 1");
  Require(c.extractor.feature_dim >= 1, "extractor.feature_dim must be >= 1");
  Require(c.model.hidden_dim >= 1 && c.model.attn_dim >= 1 &&
              c.model.embed_dim >= 1,
          "model dimensions must be >= 1");
  Require(c.loss.scale > 0.0, "loss.scale must be positive");
  Require(c.loss.margin_genuine > c.loss.margin_spoof,
          "loss.margin_genuine must exceed loss.margin_spoof");
  Require(c.train.learning_rate > 0.0, "train.learning_rate must be positive");
  Require(c.train.dropout >= 0.0 && c.train.dropout < 1.0,
          "train.dropout must be in [0, 1)");
  Require(c.train.batch_size >= 1, "train.batch_size must be >= 1");
  Require(c.train.accumulation_steps >= 1,
          "train.accumulation_steps must be >= 1");
  Require(c.train.patience_epochs >= 1, "train.patience_epochs must be >= 1");
  Require(c.train.max_epochs >= 1, "train.max_epochs must be >= 1");
  Require(c.augment.fir_prob >= 0.0 && c.augment.fir_prob <= 1.0,
          "augment.fir_prob must be in [0, 1]");
  Require(c.augment.fir_band == "nb" || c.augment.fir_band == "wb",
          "augment.fir_band must be 'nb' or 'wb'");
  Require(c.augment.nb_cutoff_hz_min > 0.0 &&
              c.augment.nb_cutoff_hz_max >= c.augment.nb_cutoff_hz_min,
          "augment narrowband cutoff range is invalid");
  Require(c.augment.wb_cutoff_hz_min > 0.0 &&
              c.augment.wb_cutoff_hz_max >= c.augment.wb_cutoff_hz_min,
          "augment wideband cutoff range is invalid");
  Require(c.augment.nb_cutoff_hz_max < 0.5 * c.data.sample_rate_hz &&
              c.augment.wb_cutoff_hz_max <= 0.5 * c.data.sample_rate_hz,
          "augment cutoffs must stay at or below the Nyquist frequency");
  Require(c.augment.num_taps_min >= 3 &&
              c.augment.num_taps_max >= c.augment.num_taps_min,
          "augment tap-count range is invalid");
  Require(c.augment.splice_fraction >= 0.0 && c.augment.splice_fraction <= 1.0,
          "augment.splice_fraction must be in [0, 1]");
  Require(c.augment.crossfade_ms >= 0.0, "augment.crossfade_ms must be >= 0");
  return c;
}

}  // namespace

ModelDims RunConfig::Dims() const {
  ModelDims dims;
  dims.num_layers_p1 = static_cast<std::size_t>(extractor.num_layers) + 1;
  dims.feat_dim = static_cast<std::size_t>(extractor.feature_dim);
  dims.hidden_dim = model.hidden_dim;
  dims.attn_dim = model.attn_dim;
  dims.embed_dim = model.embed_dim;
  return dims;
}

TrainConfig RunConfig::Train(int threads) const {
  TrainConfig t;
  t.adam.learning_rate = train.learning_rate;
  t.adam.beta1 = train.beta1;
  t.adam.beta2 = train.beta2;
  t.adam.eps = train.eps;
  t.dropout = train.dropout;
  t.batch_size = train.batch_size;
  t.accumulation_steps = train.accumulation_steps;
  t.patience_epochs = train.patience_epochs;
  t.max_epochs = train.max_epochs;
  t.seed = train.seed;
  t.threads = threads;
  return t;
}

AugmentConfig RunConfig::Augment() const {
  AugmentConfig a;
  a.enabled = augment.enabled;
  a.fir_prob = augment.fir_prob;
  a.fir_band = BandClassFromName(augment.fir_band);
  a.fir_ranges.nb_cutoff_hz_min = augment.nb_cutoff_hz_min;
  a.fir_ranges.nb_cutoff_hz_max = augment.nb_cutoff_hz_max;
  a.fir_ranges.wb_cutoff_hz_min = augment.wb_cutoff_hz_min;
  a.fir_ranges.wb_cutoff_hz_max = augment.wb_cutoff_hz_max;
  a.fir_ranges.num_taps_min = augment.num_taps_min;
  a.fir_ranges.num_taps_max = augment.num_taps_max;
  a.splice_fraction = augment.splice_fraction;
  a.crossfade_ms = augment.crossfade_ms;
  a.sample_rate_hz = data.sample_rate_hz;
  return a;
}

std::string RunConfig::ToJson() const { return ConfigToJsonDoc(*this).dump(2); }

RunConfig LoadRunConfig(const std::optional<std::filesystem::path> &path,
                        const std::vector<std::string> &overrides) {
  json doc = ConfigToJsonDoc(RunConfig{});
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file: " + path->string());
    json user;
    try {
      in >> user;
    } catch (const json::exception &e) {
      throw ConfigError("config file " + path->string() +
                        " is not valid JSON: " + e.what());
    }
    OverlayChecked(&doc, user, "");
  }
  for (const auto &o : overrides) ApplyOverride(&doc, o);
  return FromJsonDoc(doc);
}

void EchoConfig(const RunConfig &cfg, const std::filesystem::path &out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir / "config.json", std::ios::trunc);
  if (!out)
    throw Error("cannot write config echo in " + out_dir.string());
  out << cfg.ToJson() << "\n";
}

}  // namespace spoofkit
