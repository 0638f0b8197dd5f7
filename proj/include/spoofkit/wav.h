// spoofkit/wav.h

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

#ifndef SPOOFKIT_WAV_H_
#define SPOOFKIT_WAV_H_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace spoofkit {

/// Mono PCM audio. Samples live in [-1, 1]; waveforms entering the pipeline
/// are never empty.
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 16000;

  double DurationSeconds() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Reads a 16-bit PCM mono RIFF/WAVE file. The stored sample rate must equal
/// expected_rate_hz. Integer samples map to [-1, 1) by division by 32768.
/// Malformed containers, non-PCM or non-16-bit encodings, multichannel files
/// and rate mismatches are reported as distinct errors.
Waveform ReadWav(const std::filesystem::path &path, int expected_rate_hz);

/// Writes a 16-bit PCM mono RIFF/WAVE file. Samples are quantized by
/// round-half-away-from-zero of x*32767, clamped to [-32768, 32767].
/// Sample magnitudes above 1.0 are an error.
void WriteWav(const std::filesystem::path &path, const Waveform &w);

/// The quantizer used by WriteWav, exposed for golden-file tests.
std::int16_t QuantizeSample(double x);

}  // namespace spoofkit

#endif  // SPOOFKIT_WAV_H_
