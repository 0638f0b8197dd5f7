// src/splice.cc

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

#include "spoofkit/splice.h"

#include <algorithm>
#include <cmath>

#include "spoofkit/error.h"

namespace spoofkit {

SpliceRecord PlanSplice(std::size_t host_len, std::size_t donor_len, Rng *rng) {
  if (host_len < 2)
    throw Error("splice host too short (" + std::to_string(host_len) +
                 " samples)");
  std::size_t len_min = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(host_len))));
  std::size_t len_max = std::min(host_len * 9 / 10, donor_len);
  if (len_max < len_min)
    throw Error("donor shorter than minimum segment length (" +
                 std::to_string(donor_len) + " < " + std::to_string(len_min) +
                 " samples)");
  SpliceRecord rec;
  rec.length_samples = len_min + rng->Below(len_max - len_min + 1);
  rec.start_sample = rng->Below(host_len - rec.length_samples + 1);
  rec.donor_offset = rng->Below(donor_len - rec.length_samples + 1);
  return rec;
}

std::size_t CrossfadeSamples(std::size_t segment_len, int sample_rate_hz,
                             double crossfade_ms) {
  auto want = static_cast<std::size_t>(
      std::llround(crossfade_ms * 1e-3 * sample_rate_hz));
  return std::min(want, segment_len / 2);
}

Waveform ApplySplice(const Waveform &host, const Waveform &donor,
                     const SpliceRecord &rec, double crossfade_ms) {
  std::size_t h = host.samples.size();
  std::size_t d = donor.samples.size();
  std::size_t s = rec.start_sample;
  std::size_t len = rec.length_samples;
  if (len == 0) throw Error("zero-length splice segment");
  if (len >= h) throw Error("splice segment not shorter than the host");
  if (s + len > h) throw Error("splice segment exceeds host bounds");
  if (rec.donor_offset + len > d)
    throw Error("splice segment exceeds donor bounds");

  Waveform out = host;
  std::size_t fade = CrossfadeSamples(len, host.sample_rate_hz, crossfade_ms);
  for (std::size_t i = 0; i < len; ++i) {
    double donor_w = 1.0;
    if (i < fade) {
      donor_w = static_cast<double>(i + 1) / static_cast<double>(fade + 1);
    } else if (i >= len - fade) {
      donor_w = static_cast<double>(len - i) / static_cast<double>(fade + 1);
    }
    double hx = host.samples[s + i];
    double dx = donor.samples[rec.donor_offset + i];
    out.samples[s + i] = (1.0 - donor_w) * hx + donor_w * dx;
  }
  return out;
}

std::pair<Waveform, SpliceRecord> SplicePartialFake(const Waveform &host,
                                                    const Waveform &donor,
                                                    Rng *rng,
                                                    double crossfade_ms) {
  SpliceRecord rec = PlanSplice(host.samples.size(), donor.samples.size(), rng);
  Waveform out = ApplySplice(host, donor, rec, crossfade_ms);
  return {std::move(out), rec};
}

}  // namespace spoofkit
