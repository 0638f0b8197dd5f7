// src/toy_extractor.cc

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

#include "spoofkit/toy_extractor.h"

#include <cmath>
#include <numbers>

#include "spoofkit/error.h"
#include "spoofkit/rng.h"

namespace spoofkit {

namespace {

// Layer-0 analysis bank: random Gabor rows. Seven of every eight rows
// center in the 0.13125-0.1875 band of the sample rate (2.1-3.0 kHz at
// 16 kHz), where codec and vocoder artifacts concentrate; the rest spread
// over the low band. Center frequencies are fractions of the sample rate.
constexpr double kEmphasisLoNorm = 0.13125;
constexpr double kEmphasisHiNorm = 0.1875;
constexpr double kLowBandLoNorm = 0.00625;

}  // namespace

ToyExtractor::ToyExtractor(const ToyExtractorConfig &cfg) : cfg_(cfg) {
  if (cfg.num_layers < 1) throw Error("extractor needs at least one layer");
  if (cfg.feature_dim < 1) throw Error("extractor feature_dim must be positive");
  // Hop and receptive field must be at least one sample each.
  if (cfg.sample_rate_hz < 80) throw Error("extractor sample rate too low");

  auto dim = static_cast<std::size_t>(cfg.feature_dim);
  std::size_t receptive = geometry().ReceptiveSamples();
  double rate = static_cast<double>(cfg.sample_rate_hz);
  Rng rng(DeriveSeed(cfg.init_seed, "toy-extractor"));

  frame_w_ = Mat(dim, receptive);
  frame_b_.resize(dim);
  double row_scale = 2.0 / std::sqrt(static_cast<double>(receptive));
  for (std::size_t d = 0; d < dim; ++d) {
    bool emphasis = d % 8 != 7;
    double freq_hz = emphasis
                         ? rng.Uniform(kEmphasisLoNorm * rate, kEmphasisHiNorm * rate)
                         : rng.Uniform(kLowBandLoNorm * rate, kEmphasisLoNorm * rate);
    double phase = rng.Uniform(0.0, 2.0 * std::numbers::pi);
    double gain = rng.Uniform(0.5, 2.0);
    for (std::size_t i = 0; i < receptive; ++i)
      frame_w_(d, i) =
          gain * row_scale *
          std::cos(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) /
                       rate +
                   phase);
    frame_b_[d] = 0.1 * rng.Gaussian();
  }

  // Contextual residual blocks. Odd blocks use zero-sum temporal kernels
  // (frame differencers); affine maps are diagonal-dominant so per-channel
  // structure survives into the upper layers.
  blocks_.resize(static_cast<std::size_t>(cfg.num_layers));
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    auto &blk = blocks_[l];
    blk.conv = Mat(dim, 3);
    for (std::size_t d = 0; d < dim; ++d) {
      if (l % 2 == 1) {
        double a = rng.Gaussian();
        double c = rng.Gaussian();
        blk.conv(d, 0) = a;
        blk.conv(d, 1) = -(a + c);
        blk.conv(d, 2) = c;
      } else {
        for (int k = 0; k < 3; ++k)
          blk.conv(d, static_cast<std::size_t>(k)) =
              0.6 * rng.Gaussian() / std::sqrt(3.0);
      }
    }
    blk.affine = Mat(dim, dim);
    for (double &v : blk.affine.a)
      v = 0.3 * rng.Gaussian() / std::sqrt(static_cast<double>(dim));
    for (std::size_t d = 0; d < dim; ++d)
      blk.affine(d, d) += 1.0 + 0.1 * rng.Gaussian();
    blk.bias.resize(dim);
    for (double &v : blk.bias) v = 0.1 * rng.Gaussian();
  }
}

LayeredFeatures ToyExtractor::Extract(const Waveform &w) const {
  FrameGeometry geo = geometry();
  std::size_t receptive = geo.ReceptiveSamples();
  std::size_t hop = geo.HopSamples();
  if (w.sample_rate_hz != cfg_.sample_rate_hz)
    throw Error("waveform sample rate does not match the extractor");
  if (w.samples.size() < receptive)
    throw Error("waveform too short for feature extraction (" +
                 std::to_string(w.samples.size()) + " < " +
                 std::to_string(receptive) + " samples)");

  std::size_t frames = geo.NumFrames(w.samples.size());
  auto dim = static_cast<std::size_t>(cfg_.feature_dim);
  auto layers_p1 = static_cast<std::size_t>(cfg_.num_layers) + 1;
  LayeredFeatures out(layers_p1, frames, dim);

  // Hann window over the receptive field.
  std::vector<double> window(receptive);
  for (std::size_t i = 0; i < receptive; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i /
                                     static_cast<double>(receptive - 1));

  // Layer 0: windowed frame -> affine -> tanh.
  Mat prev(frames, dim);
  std::vector<double> frame(receptive);
  for (std::size_t t = 0; t < frames; ++t) {
    const double *src = w.samples.data() + t * hop;
    for (std::size_t i = 0; i < receptive; ++i) frame[i] = window[i] * src[i];
    MatVec(frame_w_, frame, prev.Row(t));
    for (std::size_t d = 0; d < dim; ++d) {
      double v = std::tanh(prev(t, d) + frame_b_[d]);
      prev(t, d) = v;
      out.At(0, t, d) = static_cast<float>(v);
    }
  }

  // Contextual layers: residual blocks over frames.
  Mat conv(frames, dim);
  Mat next(frames, dim);
  std::vector<double> z(dim);
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    const auto &blk = blocks_[l];
    for (std::size_t t = 0; t < frames; ++t) {
      for (std::size_t d = 0; d < dim; ++d) {
        double acc = 0.0;
        if (t > 0) acc += blk.conv(d, 0) * prev(t - 1, d);
        acc += blk.conv(d, 1) * prev(t, d);
        if (t + 1 < frames) acc += blk.conv(d, 2) * prev(t + 1, d);
        conv(t, d) = acc;
      }
    }
    for (std::size_t t = 0; t < frames; ++t) {
      MatVec(blk.affine, conv.Row(t), z);
      for (std::size_t d = 0; d < dim; ++d) {
        double v = prev(t, d) + std::tanh(z[d] + blk.bias[d]);
        next(t, d) = v;
        out.At(l + 1, t, d) = static_cast<float>(v);
      }
    }
    std::swap(prev, next);
  }
  return out;
}

std::uint64_t ToyExtractor::Checksum() const {
  std::uint64_t h = Fnv1a(frame_w_.a.data(), frame_w_.a.size() * sizeof(double));
  h = Fnv1a(frame_b_.data(), frame_b_.size() * sizeof(double), h);
  for (const auto &blk : blocks_) {
    h = Fnv1a(blk.conv.a.data(), blk.conv.a.size() * sizeof(double), h);
    h = Fnv1a(blk.affine.a.data(), blk.affine.a.size() * sizeof(double), h);
    h = Fnv1a(blk.bias.data(), blk.bias.size() * sizeof(double), h);
  }
  return h;
}

}  // namespace spoofkit
