// spoofkit/augment_plan.h

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

#ifndef SPOOFKIT_AUGMENT_PLAN_H_
#define SPOOFKIT_AUGMENT_PLAN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spoofkit/fir.h"
#include "spoofkit/manifest.h"
#include "spoofkit/splice.h"

namespace spoofkit {

/// On-the-fly augmentation settings for one training run.
struct AugmentConfig {
  bool enabled = true;
  double fir_prob = 0.5;
  BandClass fir_band = BandClass::kNarrowband;
  FirSamplingRanges fir_ranges;
  double splice_fraction = 0.2;  // fraction of genuine hosts spliced per epoch
  double crossfade_ms = 10.0;
  int sample_rate_hz = 16000;
};

/// Per-utterance decision: none, FIR, splice, or both.
struct AugmentDecision {
  std::optional<FirFilter> fir;
  std::optional<SpliceRecord> splice;  // donor_id names another manifest row
};

/// Augmentation decisions for one epoch, aligned with the manifest order.
/// A pure function of (manifest, epoch_seed, config): replaying a seed
/// reproduces the plan bit-exactly. Exactly floor(splice_fraction * #genuine)
/// genuine utterances carry splice decisions, chosen without replacement.
struct EpochAugmentPlan {
  std::uint64_t epoch_seed = 0;
  std::vector<AugmentDecision> decisions;

  std::size_t NumSplices() const;
  std::size_t NumFirs() const;
};

/// Returns the sample count of each manifest entry, preferring the recorded
/// num_samples and falling back to reading the audio header.
std::vector<std::size_t> ManifestLengths(const Manifest &manifest,
                                         int sample_rate_hz);

/// Builds the epoch plan. The manifest must be non-empty. Splice geometry is
/// drawn per host from a seed derived from (epoch_seed, host id); FIR
/// decisions are drawn per utterance from (epoch_seed, id).
EpochAugmentPlan BuildEpochPlan(const Manifest &manifest,
                                const std::vector<std::size_t> &lengths,
                                std::uint64_t epoch_seed,
                                const AugmentConfig &cfg);

/// Applies one decision to a host waveform. `load_donor` resolves the donor
/// waveform when the decision carries a splice. Splice is applied before the
/// FIR filter.
Waveform ApplyDecision(
    const Waveform &host, const AugmentDecision &decision,
    const AugmentConfig &cfg,
    const std::function<const Waveform &(const std::string &)> &load_donor);

}  // namespace spoofkit

#endif  // SPOOFKIT_AUGMENT_PLAN_H_
