// src/fir.cc

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

#include "spoofkit/fir.h"

#include <cmath>
#include <numbers>

#include "spoofkit/error.h"

namespace spoofkit {

namespace {

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::string BandClassName(BandClass band) {
  return band == BandClass::kNarrowband ? "nb" : "wb";
}

BandClass BandClassFromName(const std::string &name) {
  if (name == "nb") return BandClass::kNarrowband;
  if (name == "wb") return BandClass::kWideband;
  throw ConfigError("unknown FIR band class: " + name);
}

FirFilter DesignLowpassFir(double cutoff_norm, int num_taps) {
  if (num_taps <= 0 || num_taps % 2 == 0)
    throw Error("FIR tap count must be odd and positive, got " +
                 std::to_string(num_taps));
  if (!(cutoff_norm > 0.0 && cutoff_norm <= 0.5))
    throw Error("FIR cutoff must be in (0, 0.5] of the sample rate");

  FirFilter f;
  f.cutoff_norm = cutoff_norm;
  f.taps.resize(num_taps);
  double center = (num_taps - 1) / 2.0;
  double sum = 0.0;
  for (int n = 0; n < num_taps; ++n) {
    double ham = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * n /
                                        (num_taps - 1));
    double v = ham * Sinc(2.0 * cutoff_norm * (n - center));
    f.taps[n] = v;
    sum += v;
  }
  for (double &t : f.taps) t /= sum;
  return f;
}

FirConfig SampleFirConfig(BandClass band, int sample_rate_hz,
                          const FirSamplingRanges &ranges, Rng *rng) {
  double lo = band == BandClass::kNarrowband ? ranges.nb_cutoff_hz_min
                                             : ranges.wb_cutoff_hz_min;
  double hi = band == BandClass::kNarrowband ? ranges.nb_cutoff_hz_max
                                             : ranges.wb_cutoff_hz_max;
  FirConfig cfg;
  cfg.cutoff_norm = rng->Uniform(lo, hi) / sample_rate_hz;
  // Uniform over the odd values in [num_taps_min, num_taps_max].
  int odd_lo = ranges.num_taps_min | 1;
  int odd_count = (ranges.num_taps_max - odd_lo) / 2 + 1;
  cfg.num_taps = odd_lo + 2 * static_cast<int>(rng->Below(odd_count));
  return cfg;
}

Waveform ApplyFir(const Waveform &w, const FirFilter &f) {
  std::size_t n = w.samples.size();
  std::size_t k = f.taps.size();
  if (k >= n)
    throw Error("FIR filter (" + std::to_string(k) +
                 " taps) is not shorter than the signal (" +
                 std::to_string(n) + " samples)");
  std::ptrdiff_t half = static_cast<std::ptrdiff_t>(k) / 2;
  Waveform out;
  out.sample_rate_hz = w.sample_rate_hz;
  out.samples.assign(n, 0.0);
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(n); ++t) {
    double acc = 0.0;
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(k); ++j) {
      std::ptrdiff_t src = t + half - j;
      if (src >= 0 && src < static_cast<std::ptrdiff_t>(n))
        acc += f.taps[static_cast<std::size_t>(j)] *
               w.samples[static_cast<std::size_t>(src)];
    }
    out.samples[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

}  // namespace spoofkit
