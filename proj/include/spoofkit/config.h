// spoofkit/config.h

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

#ifndef SPOOFKIT_CONFIG_H_
#define SPOOFKIT_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spoofkit/augment_plan.h"
#include "spoofkit/datagen.h"
#include "spoofkit/model.h"
#include "spoofkit/toy_extractor.h"
#include "spoofkit/trainer.h"

namespace spoofkit {

/// Single JSON document configuring every subcommand. Missing keys take the
/// defaults below; unknown keys are rejected. The effective config is echoed
/// into each output directory.
struct RunConfig {
  SynthConfig data;
  ToyExtractorConfig extractor;
  struct ModelSection {
    std::size_t hidden_dim = 128;
    std::size_t attn_dim = 128;
    std::size_t embed_dim = 128;
  } model;
  LossConfig loss;
  struct TrainSection {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double dropout = 0.2;
    int batch_size = 8;
    int accumulation_steps = 8;
    int patience_epochs = 10;
    int max_epochs = 50;
    std::uint64_t seed = 7;
  } train;
  struct AugmentSection {
    bool enabled = true;
    double fir_prob = 0.5;
    std::string fir_band = "nb";
    double nb_cutoff_hz_min = 3000.0;
    double nb_cutoff_hz_max = 4000.0;
    double wb_cutoff_hz_min = 6000.0;
    double wb_cutoff_hz_max = 7800.0;
    int num_taps_min = 51;
    int num_taps_max = 151;
    double splice_fraction = 0.2;
    double crossfade_ms = 10.0;
  } augment;
  struct EvalSection {
    bool write_det_points = false;
  } eval;

  /// Assembled views over the sections.
  ModelDims Dims() const;
  TrainConfig Train(int threads) const;
  AugmentConfig Augment() const;

  /// Serializes the effective configuration (all sections, all keys).
  std::string ToJson() const;
};

/// Defaults, optionally overlaid with a JSON config file, then with
/// `section.key=value` override strings. Unknown sections or keys raise
/// ConfigError; so do type mismatches and out-of-range values.
RunConfig LoadRunConfig(const std::optional<std::filesystem::path> &path,
                        const std::vector<std::string> &overrides);

/// Writes the effective config as config.json inside out_dir.
void EchoConfig(const RunConfig &cfg, const std::filesystem::path &out_dir);

}  // namespace spoofkit

#endif  // SPOOFKIT_CONFIG_H_
