// spoofkit/datagen.h

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

#ifndef SPOOFKIT_DATAGEN_H_
#define SPOOFKIT_DATAGEN_H_

#include <cstdint>
#include <filesystem>

#include "spoofkit/manifest.h"
#include "spoofkit/rng.h"
#include "spoofkit/wav.h"

namespace spoofkit {

/// Synthetic corpus settings. Counts apply to each split (train/dev/eval);
/// splits stay speaker-disjoint through disjoint f0 sub-ranges.
struct SynthConfig {
  int n_genuine = 100;
  int n_spoof = 100;
  int n_partial = 20;
  double duration_s_min = 1.0;
  double duration_s_max = 3.0;
  int sample_rate_hz = 16000;
  std::uint64_t seed = 7;
};

/// Harmonic voice: f0 drawn from [f0_lo, f0_hi], 8 harmonics with 1/k
/// amplitude decay, slow f0 jitter, pink-like noise 30 dB below the signal.
/// Peak-normalized to 0.9.
Waveform SynthGenuine(Rng *rng, const SynthConfig &cfg, double f0_lo,
                      double f0_hi);

/// Same generative family plus a deterministic vocoder artifact: 16-level
/// amplitude quantization followed by a 2-2.5 kHz band-stop notch.
/// Peak-normalized to 0.9.
Waveform SynthSpoof(Rng *rng, const SynthConfig &cfg, double f0_lo,
                    double f0_hi);

/// Mid-rise 16-level quantizer over [-1, 1]; the spoof artifact's first
/// stage, exposed for tests.
double QuantizeAmplitude16(double x);

struct CorpusPaths {
  std::filesystem::path train_manifest;
  std::filesystem::path dev_manifest;
  std::filesystem::path eval_manifest;
  std::filesystem::path splice_truth;
};

/// Generates WAV files, per-split manifests and splice ground truth under
/// out_dir. Partial fakes splice a spoof segment into a genuine host from
/// the same split. Byte-identical for identical configs.
CorpusPaths BuildCorpus(const SynthConfig &cfg,
                        const std::filesystem::path &out_dir, int threads);

}  // namespace spoofkit

#endif  // SPOOFKIT_DATAGEN_H_
