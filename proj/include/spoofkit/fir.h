// spoofkit/fir.h

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

#ifndef SPOOFKIT_FIR_H_
#define SPOOFKIT_FIR_H_

#include <string>
#include <vector>

#include "spoofkit/rng.h"
#include "spoofkit/wav.h"

namespace spoofkit {

/// Channel-simulation family a random low-pass filter is drawn from.
/// NB models the telephone band edge, WB wideband codec cutoffs.
enum class BandClass { kNarrowband, kWideband };

std::string BandClassName(BandClass band);
BandClass BandClassFromName(const std::string &name);

/// Linear-phase low-pass FIR filter.
/// Invariants: odd tap count, taps symmetric about the center within 1e-12,
/// unit DC gain within 1e-9.
struct FirFilter {
  std::vector<double> taps;
  double cutoff_norm = 0.0;  // cutoff as a fraction of the sample rate, (0, 0.5]
  BandClass band_class = BandClass::kNarrowband;
};

/// Hamming-windowed sinc design:
///   h[n] = w_ham[n] * sinc(2*cutoff_norm*(n - (N-1)/2)),  rescaled so sum(h) = 1.
/// num_taps must be odd, cutoff_norm in (0, 0.5].
FirFilter DesignLowpassFir(double cutoff_norm, int num_taps);

/// Cutoff ranges (Hz) and tap-count range used when sampling random filters.
struct FirSamplingRanges {
  double nb_cutoff_hz_min = 3000.0;
  double nb_cutoff_hz_max = 4000.0;
  double wb_cutoff_hz_min = 6000.0;
  double wb_cutoff_hz_max = 7800.0;
  int num_taps_min = 51;   // odd
  int num_taps_max = 151;  // odd
};

struct FirConfig {
  double cutoff_norm = 0.0;
  int num_taps = 0;
};

/// Draws cutoff (uniform in the band's Hz range, then normalized by the
/// sample rate) and an odd tap count (uniform over odd values in range).
/// Deterministic given the rng state; cutoff is drawn first.
FirConfig SampleFirConfig(BandClass band, int sample_rate_hz,
                          const FirSamplingRanges &ranges, Rng *rng);

/// "Same"-mode linear convolution: output length equals input length, edges
/// zero-padded. The filter must be shorter than the waveform.
Waveform ApplyFir(const Waveform &w, const FirFilter &f);

}  // namespace spoofkit

#endif  // SPOOFKIT_FIR_H_
