// spoofkit/splice.h

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

#ifndef SPOOFKIT_SPLICE_H_
#define SPOOFKIT_SPLICE_H_

#include <cstddef>
#include <string>
#include <utility>

#include "spoofkit/rng.h"
#include "spoofkit/wav.h"

namespace spoofkit {

/// One partial-fake edit: a segment of the host replaced by donor audio.
/// Invariants: start_sample + length_samples <= host length, and
/// length_samples strictly below the host length.
struct SpliceRecord {
  std::string host_id;
  std::string donor_id;
  std::size_t start_sample = 0;
  std::size_t length_samples = 0;
  std::size_t donor_offset = 0;
};

/// Draws splice geometry. Segment length is uniform over
/// [round(0.1*host), floor(0.9*host)] clamped to the donor length (at least
/// 1 sample); start and donor offset are uniform over the positions where
/// the segment fits. host_id/donor_id are left empty.
SpliceRecord PlanSplice(std::size_t host_len, std::size_t donor_len, Rng *rng);

/// Replaces host samples [start, start+length) with the donor segment at
/// donor_offset, applying a linear crossfade of crossfade_ms at both
/// boundaries (shrunk to fit short segments). Output length equals the host
/// length.
Waveform ApplySplice(const Waveform &host, const Waveform &donor,
                     const SpliceRecord &rec, double crossfade_ms = 10.0);

/// PlanSplice + ApplySplice in one call.
std::pair<Waveform, SpliceRecord> SplicePartialFake(const Waveform &host,
                                                    const Waveform &donor,
                                                    Rng *rng,
                                                    double crossfade_ms = 10.0);

/// Crossfade length in samples for a segment of the given length.
std::size_t CrossfadeSamples(std::size_t segment_len, int sample_rate_hz,
                             double crossfade_ms);

}  // namespace spoofkit

#endif  // SPOOFKIT_SPLICE_H_
