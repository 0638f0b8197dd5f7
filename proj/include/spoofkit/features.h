// spoofkit/features.h

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

#ifndef SPOOFKIT_FEATURES_H_
#define SPOOFKIT_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace spoofkit {

/// Frame geometry shared by the extractor and shape checks: frames are taken
/// every 20 ms over a 25 ms receptive field.
struct FrameGeometry {
  int sample_rate_hz = 16000;

  std::size_t HopSamples() const {
    return static_cast<std::size_t>(sample_rate_hz) * 20 / 1000;
  }
  std::size_t ReceptiveSamples() const {
    return static_cast<std::size_t>(sample_rate_hz) * 25 / 1000;
  }
  /// floor((num_samples - receptive) / hop) + 1; num_samples must be at
  /// least the receptive field.
  std::size_t NumFrames(std::size_t num_samples) const {
    return (num_samples - ReceptiveSamples()) / HopSamples() + 1;
  }
};

/// Per-layer hidden representations: [layer][frame][channel], stored flat in
/// layer-major then frame-major order as 32-bit floats. Layer 0 is the frame
/// encoder output; layers 1..L are the contextual layers.
struct LayeredFeatures {
  std::size_t num_layers_p1 = 0;  // L+1, at least 2
  std::size_t num_frames = 0;
  std::size_t feat_dim = 0;
  std::vector<float> data;

  LayeredFeatures() = default;
  LayeredFeatures(std::size_t layers_p1, std::size_t frames, std::size_t dim)
      : num_layers_p1(layers_p1),
        num_frames(frames),
        feat_dim(dim),
        data(layers_p1 * frames * dim, 0.0F) {}

  float &At(std::size_t l, std::size_t t, std::size_t d) {
    return data[(l * num_frames + t) * feat_dim + d];
  }
  float At(std::size_t l, std::size_t t, std::size_t d) const {
    return data[(l * num_frames + t) * feat_dim + d];
  }
};

/// Payload size in bytes of the binary feature format for given dimensions.
std::uint64_t FeaturePayloadBytes(std::uint64_t layers_p1, std::uint64_t frames,
                                  std::uint64_t dim);

/// Binary feature file: magic "LFT1", little-endian u32 (L+1, T, D), then
/// (L+1)*T*D IEEE-754 32-bit floats in layer-major then frame-major order.
/// Roundtrips are bit-exact.
void SaveFeatures(const std::filesystem::path &path, const LayeredFeatures &f);
LayeredFeatures LoadFeatures(const std::filesystem::path &path);

}  // namespace spoofkit

#endif  // SPOOFKIT_FEATURES_H_
