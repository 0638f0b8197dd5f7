// spoofkit/toy_extractor.h

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

#ifndef SPOOFKIT_TOY_EXTRACTOR_H_
#define SPOOFKIT_TOY_EXTRACTOR_H_

#include <cstdint>
#include <vector>

#include "spoofkit/features.h"
#include "spoofkit/mat.h"
#include "spoofkit/wav.h"

namespace spoofkit {

struct ToyExtractorConfig {
  int num_layers = 4;      // contextual layers; output has num_layers+1 layers
  int feature_dim = 64;
  std::uint64_t init_seed = 1;
  int sample_rate_hz = 16000;
};

/// Deterministic frozen multi-layer feature map standing in for a pretrained
/// speech encoder. Layer 0 is a strided frame encoder (25 ms window, 20 ms
/// hop: Hann-windowed frame, fixed random affine map, tanh). Each contextual
/// layer adds a residual block: per-channel temporal convolution of width 3,
/// then a per-frame affine map with tanh, added back to its input. All
/// parameters are generated once from init_seed and never change.
class ToyExtractor {
 public:
  explicit ToyExtractor(const ToyExtractorConfig &cfg);

  const ToyExtractorConfig &config() const { return cfg_; }
  FrameGeometry geometry() const { return {cfg_.sample_rate_hz}; }

  /// Waveform must cover at least one receptive field. Output values are
  /// bounded: |value| < num_layers + 1.
  LayeredFeatures Extract(const Waveform &w) const;

  /// FNV-1a over all parameter bytes; training must leave this unchanged.
  std::uint64_t Checksum() const;

 private:
  ToyExtractorConfig cfg_;
  Mat frame_w_;                  // D x receptive
  std::vector<double> frame_b_;  // D
  struct ResidualBlock {
    Mat conv;                 // D x 3, per-channel temporal kernel
    Mat affine;               // D x D
    std::vector<double> bias;  // D
  };
  std::vector<ResidualBlock> blocks_;
};

}  // namespace spoofkit

#endif  // SPOOFKIT_TOY_EXTRACTOR_H_
