// src/datagen.cc

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

#include "spoofkit/datagen.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "spoofkit/error.h"
#include "spoofkit/fir.h"
#include "spoofkit/parallel.h"
#include "spoofkit/splice.h"

namespace spoofkit {

namespace {

constexpr int kNumHarmonics = 8;
constexpr double kJitterDepth = 0.003;
constexpr double kNoiseDb = -30.0;
constexpr double kPeak = 0.9;

// Simulated speakers are narrow f0 bands over [90, 250) Hz. Every third
// band belongs to the same split, so splits are speaker-disjoint while
// their f0 distributions match.
constexpr const char *kSplitNames[] = {"train", "dev", "eval"};
constexpr double kF0Lo = 90.0;
constexpr double kF0Hi = 250.0;
constexpr int kBandsPerSplit = 12;
constexpr double kBandWidth = (kF0Hi - kF0Lo) / (3 * kBandsPerSplit);

double DrawSplitF0(Rng *rng, int split_idx) {
  int band = static_cast<int>(rng->Below(kBandsPerSplit));
  double lo = kF0Lo + (3 * band + split_idx) * kBandWidth;
  return rng->Uniform(lo, lo + kBandWidth);
}

void ValidateConfig(const SynthConfig &cfg) {
  if (cfg.n_genuine < 0 || cfg.n_spoof < 0 || cfg.n_partial < 0)
    throw Error("corpus counts must be non-negative");
  if (!(cfg.duration_s_min > 0.05) || cfg.duration_s_max < cfg.duration_s_min)
    throw Error("durations must exceed 0.05 s and be ordered");
  if (cfg.n_partial > 0 && (cfg.n_genuine == 0 || cfg.n_spoof == 0))
    throw Error("partial fakes need at least one genuine host and one spoof donor");
}

void PeakNormalize(Waveform *w, double peak) {
  double mx = 0.0;
  for (double x : w->samples) mx = std::max(mx, std::fabs(x));
  if (mx == 0.0) throw Error("cannot normalize an all-zero waveform");
  double scale = peak / mx;
  for (double &x : w->samples) x *= scale;
}

/// Harmonic source with slow f0 jitter plus leaky-integrated noise.
Waveform SynthBase(Rng *rng, const SynthConfig &cfg, double f0_lo,
                   double f0_hi) {
  double dur = rng->Uniform(cfg.duration_s_min, cfg.duration_s_max);
  auto n = static_cast<std::size_t>(std::llround(dur * cfg.sample_rate_hz));
  double f0 = rng->Uniform(f0_lo, f0_hi);
  double mod_freq = rng->Uniform(0.5, 2.0);
  double mod_phase = rng->Uniform(0.0, 2.0 * std::numbers::pi);
  double harmonic_phase[kNumHarmonics];
  for (double &p : harmonic_phase) p = rng->Uniform(0.0, 2.0 * std::numbers::pi);

  Waveform w;
  w.sample_rate_hz = cfg.sample_rate_hz;
  w.samples.resize(n);

  double phase = 0.0;
  double signal_power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = static_cast<double>(i) / cfg.sample_rate_hz;
    double inst_f0 =
        f0 * (1.0 + kJitterDepth *
                        std::sin(2.0 * std::numbers::pi * mod_freq * t + mod_phase));
    phase += 2.0 * std::numbers::pi * inst_f0 / cfg.sample_rate_hz;
    double v = 0.0;
    for (int k = 1; k <= kNumHarmonics; ++k)
      v += std::sin(k * phase + harmonic_phase[k - 1]) / k;
    w.samples[i] = v;
    signal_power += v * v;
  }
  signal_power /= static_cast<double>(n);

  double noise_rms = std::sqrt(signal_power) * std::pow(10.0, kNoiseDb / 20.0);
  double state = 0.0;
  double noise_power = 0.0;
  std::vector<double> noise(n);
  for (std::size_t i = 0; i < n; ++i) {
    state = 0.8 * state + rng->Gaussian();
    noise[i] = state;
    noise_power += state * state;
  }
  double scale = noise_rms / std::sqrt(noise_power / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) w.samples[i] += scale * noise[i];
  return w;
}

FirFilter DesignNotchFilter() {
  constexpr int kTaps = 201;
  FirFilter low = DesignLowpassFir(2000.0 / 16000.0, kTaps);
  FirFilter high = DesignLowpassFir(2500.0 / 16000.0, kTaps);
  // Band-stop: identity minus the 2-2.5 kHz band-pass.
  FirFilter notch;
  notch.cutoff_norm = 2500.0 / 16000.0;
  notch.taps.resize(kTaps);
  for (int i = 0; i < kTaps; ++i) notch.taps[i] = -(high.taps[i] - low.taps[i]);
  notch.taps[(kTaps - 1) / 2] += 1.0;
  return notch;
}

}  // namespace

double QuantizeAmplitude16(double x) {
  // Mid-tread over [-1, 1]: 16 levels including zero.
  double idx = std::round(x * 8.0);
  idx = std::min(std::max(idx, -8.0), 7.0);
  return idx / 8.0;
}

Waveform SynthGenuine(Rng *rng, const SynthConfig &cfg, double f0_lo,
                      double f0_hi) {
  Waveform w = SynthBase(rng, cfg, f0_lo, f0_hi);
  PeakNormalize(&w, kPeak);
  return w;
}

Waveform SynthSpoof(Rng *rng, const SynthConfig &cfg, double f0_lo,
                    double f0_hi) {
  Waveform w = SynthBase(rng, cfg, f0_lo, f0_hi);
  PeakNormalize(&w, 1.0);
  for (double &x : w.samples) x = QuantizeAmplitude16(x);
  static const FirFilter kNotch = DesignNotchFilter();
  w = ApplyFir(w, kNotch);
  PeakNormalize(&w, kPeak);
  return w;
}

CorpusPaths BuildCorpus(const SynthConfig &cfg,
                        const std::filesystem::path &out_dir, int threads) {
  ValidateConfig(cfg);
  std::filesystem::create_directories(out_dir / "wav");

  nlohmann::json splice_truth = nlohmann::json::array();
  CorpusPaths paths;
  paths.splice_truth = out_dir / "splices.json";

  for (int split_idx = 0; split_idx < 3; ++split_idx) {
    const char *split_name = kSplitNames[split_idx];
    auto id_of = [split_name](const char *kind, int i) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%s_%s_%04d", split_name, kind, i);
      return std::string(buf);
    };

    std::vector<Waveform> genuine(cfg.n_genuine);
    std::vector<Waveform> spoof(cfg.n_spoof);
    ParallelFor(static_cast<std::size_t>(cfg.n_genuine), threads,
                [&](std::size_t i) {
                  Rng rng(DeriveSeed(cfg.seed, "synth-genuine",
                                     static_cast<std::uint64_t>(split_idx),
                                     id_of("genuine", static_cast<int>(i))));
                  double f0 = DrawSplitF0(&rng, split_idx);
                  genuine[i] = SynthGenuine(&rng, cfg, f0, f0);
                });
    ParallelFor(static_cast<std::size_t>(cfg.n_spoof), threads,
                [&](std::size_t i) {
                  Rng rng(DeriveSeed(cfg.seed, "synth-spoof",
                                     static_cast<std::uint64_t>(split_idx),
                                     id_of("spoof", static_cast<int>(i))));
                  double f0 = DrawSplitF0(&rng, split_idx);
                  spoof[i] = SynthSpoof(&rng, cfg, f0, f0);
                });

    Manifest manifest;
    auto add_row = [&](const std::string &id, const Waveform &w, Label label) {
      std::filesystem::path file = out_dir / "wav" / (id + ".wav");
      WriteWav(file, w);
      ManifestEntry e;
      e.id = id;
      e.path = file;
      e.label = label;
      e.num_samples = w.samples.size();
      manifest.push_back(std::move(e));
      return manifest.size() - 1;
    };

    for (int i = 0; i < cfg.n_genuine; ++i)
      add_row(id_of("genuine", i), genuine[i], Label::kGenuine);
    for (int i = 0; i < cfg.n_spoof; ++i)
      add_row(id_of("spoof", i), spoof[i], Label::kSpoof);

    for (int i = 0; i < cfg.n_partial; ++i) {
      std::string id = id_of("partial", i);
      Rng rng(DeriveSeed(cfg.seed, "partial",
                         static_cast<std::uint64_t>(split_idx), id));
      auto host_idx = static_cast<std::size_t>(
          rng.Below(static_cast<std::uint64_t>(cfg.n_genuine)));
      auto donor_idx = static_cast<std::size_t>(
          rng.Below(static_cast<std::uint64_t>(cfg.n_spoof)));
      auto [wave, rec] =
          SplicePartialFake(genuine[host_idx], spoof[donor_idx], &rng);
      rec.host_id = id_of("genuine", static_cast<int>(host_idx));
      rec.donor_id = id_of("spoof", static_cast<int>(donor_idx));
      std::size_t row = add_row(id, wave, Label::kPartial);
      manifest[row].splice = rec;
      splice_truth.push_back({{"id", id},
                              {"host_id", rec.host_id},
                              {"donor_id", rec.donor_id},
                              {"start_sample", rec.start_sample},
                              {"length_samples", rec.length_samples},
                              {"donor_offset", rec.donor_offset}});
    }

    std::filesystem::path manifest_path =
        out_dir / (std::string(split_name) + ".json");
    SaveManifest(manifest_path, manifest);
    if (split_idx == 0) paths.train_manifest = manifest_path;
    if (split_idx == 1) paths.dev_manifest = manifest_path;
    if (split_idx == 2) paths.eval_manifest = manifest_path;
  }

  std::ofstream truth(paths.splice_truth, std::ios::trunc);
  if (!truth) throw Error("cannot write " + paths.splice_truth.string());
  truth << splice_truth.dump(2) << "\n";
  return paths;
}

}  // namespace spoofkit
