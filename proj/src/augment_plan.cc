// src/augment_plan.cc

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

#include "spoofkit/augment_plan.h"

#include <cmath>

#include "spoofkit/error.h"

namespace spoofkit {

std::size_t EpochAugmentPlan::NumSplices() const {
  std::size_t n = 0;
  for (const auto &d : decisions) n += d.splice.has_value() ? 1 : 0;
  return n;
}

std::size_t EpochAugmentPlan::NumFirs() const {
  std::size_t n = 0;
  for (const auto &d : decisions) n += d.fir.has_value() ? 1 : 0;
  return n;
}

std::vector<std::size_t> ManifestLengths(const Manifest &manifest,
                                         int sample_rate_hz) {
  std::vector<std::size_t> lengths(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto &e = manifest[i];
    if (e.num_samples) {
      lengths[i] = *e.num_samples;
    } else {
      if (e.path.extension() == ".lft")
        throw Error("augmentation requires waveform input, got feature file " +
                     e.path.string());
      lengths[i] = ReadWav(e.path, sample_rate_hz).samples.size();
    }
  }
  return lengths;
}

EpochAugmentPlan BuildEpochPlan(const Manifest &manifest,
                                const std::vector<std::size_t> &lengths,
                                std::uint64_t epoch_seed,
                                const AugmentConfig &cfg) {
  if (manifest.empty()) throw Error("cannot build an epoch plan: empty manifest");
  if (lengths.size() != manifest.size())
    throw Error("manifest/length count mismatch");

  EpochAugmentPlan plan;
  plan.epoch_seed = epoch_seed;
  plan.decisions.resize(manifest.size());

  // Independent FIR decision per utterance.
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    Rng rng(DeriveSeed(epoch_seed, "fir", 0, manifest[i].id));
    if (rng.Bernoulli(cfg.fir_prob)) {
      FirConfig fc =
          SampleFirConfig(cfg.fir_band, cfg.sample_rate_hz, cfg.fir_ranges, &rng);
      FirFilter f = DesignLowpassFir(fc.cutoff_norm, fc.num_taps);
      f.band_class = cfg.fir_band;
      plan.decisions[i].fir = std::move(f);
    }
  }

  // Exactly floor(splice_fraction * #genuine) genuine hosts, drawn without
  // replacement.
  std::vector<std::size_t> genuine;
  for (std::size_t i = 0; i < manifest.size(); ++i)
    if (manifest[i].label == Label::kGenuine) genuine.push_back(i);
  auto num_splices = static_cast<std::size_t>(
      std::floor(cfg.splice_fraction * static_cast<double>(genuine.size())));
  Rng host_rng(DeriveSeed(epoch_seed, "splice-hosts"));
  for (std::size_t k = 0; k < num_splices; ++k) {
    std::size_t j = k + host_rng.Below(genuine.size() - k);
    std::swap(genuine[k], genuine[j]);
  }

  for (std::size_t k = 0; k < num_splices; ++k) {
    std::size_t host_idx = genuine[k];
    const auto &host = manifest[host_idx];
    Rng rng(DeriveSeed(epoch_seed, "splice", 0, host.id));
    SpliceRecord rec;
    bool planned = false;
    for (int attempt = 0; attempt < 100 && !planned; ++attempt) {
      std::size_t pick = rng.Below(manifest.size() - 1);
      std::size_t donor_idx = pick >= host_idx ? pick + 1 : pick;
      try {
        rec = PlanSplice(lengths[host_idx], lengths[donor_idx], &rng);
        rec.host_id = host.id;
        rec.donor_id = manifest[donor_idx].id;
        planned = true;
      } catch (const Error &) {
        // Donor too short for this host; redraw.
      }
    }
    if (!planned)
      throw Error("no usable splice donor found for utterance " + host.id);
    plan.decisions[host_idx].splice = std::move(rec);
  }
  return plan;
}

Waveform ApplyDecision(
    const Waveform &host, const AugmentDecision &decision,
    const AugmentConfig &cfg,
    const std::function<const Waveform &(const std::string &)> &load_donor) {
  Waveform out = host;
  if (decision.splice) {
    const Waveform &donor = load_donor(decision.splice->donor_id);
    out = ApplySplice(out, donor, *decision.splice, cfg.crossfade_ms);
  }
  if (decision.fir) out = ApplyFir(out, *decision.fir);
  return out;
}

}  // namespace spoofkit
