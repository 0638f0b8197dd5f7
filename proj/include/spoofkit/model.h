// spoofkit/model.h

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

#ifndef SPOOFKIT_MODEL_H_
#define SPOOFKIT_MODEL_H_

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "spoofkit/features.h"
#include "spoofkit/manifest.h"
#include "spoofkit/mat.h"
#include "spoofkit/rng.h"

namespace spoofkit {

// Epsilon constants used across the classifier.
inline constexpr double kNormEps = 1e-5;     // temporal normalization variance
inline constexpr double kPoolEps = 1e-6;     // pooled variance floor
inline constexpr double kCosineEps = 1e-12;  // cosine norm guard

struct ModelDims {
  std::size_t num_layers_p1 = 5;  // L+1 input layers
  std::size_t feat_dim = 64;      // D
  std::size_t hidden_dim = 128;   // H, both feed-forward layers
  std::size_t attn_dim = 128;     // A
  std::size_t embed_dim = 128;    // E

  bool operator==(const ModelDims &) const = default;
};

/// All trainable parameters of the classification head. Layer weights are
/// parameterized as logits; softmax keeps the mixing weights positive and
/// summing to one.
struct ModelParams {
  ModelDims dims;
  std::vector<double> layer_logits;  // L+1
  Mat ff1_w;                         // H x D
  std::vector<double> ff1_b;         // H
  Mat ff2_w;                         // H x H
  std::vector<double> ff2_b;         // H
  Mat attn_w;                        // A x H
  std::vector<double> attn_b;        // A
  std::vector<double> attn_v;        // A
  double attn_k = 0.0;
  Mat embed_w;                       // E x 2H
  std::vector<double> embed_b;       // E
  std::vector<double> w_genuine;     // E, direction of genuine speech

  static ModelParams Init(const ModelDims &dims, Rng *rng);
  static ModelParams ZerosLike(const ModelParams &other);

  /// Visits every tensor in the declared (checkpoint) order.
  void ForEachTensor(
      const std::function<void(std::string_view, std::span<double>)> &fn);
  void ForEachTensor(
      const std::function<void(std::string_view, std::span<const double>)> &fn)
      const;
  std::size_t NumCoords() const;
};

using Gradients = ModelParams;

struct LossConfig {
  double scale = 20.0;
  double margin_genuine = 0.9;  // must exceed margin_spoof
  double margin_spoof = 0.2;
};

enum class Mode { kTrain, kEval };

/// Double-precision [layer][frame][channel] tensor used inside the model.
struct NormalizedFeatures {
  std::size_t num_layers_p1 = 0;
  std::size_t num_frames = 0;
  std::size_t feat_dim = 0;
  std::vector<double> data;

  double &At(std::size_t l, std::size_t t, std::size_t d) {
    return data[(l * num_frames + t) * feat_dim + d];
  }
  double At(std::size_t l, std::size_t t, std::size_t d) const {
    return data[(l * num_frames + t) * feat_dim + d];
  }
};

/// Every intermediate needed by the backward pass; produced only in train
/// mode.
struct ForwardCache {
  NormalizedFeatures normalized;
  std::vector<double> alpha;  // softmax(layer_logits)
  Mat mixed;                  // T x D
  Mat ff1_pre;                // T x H, pre-ReLU
  Mat ff1_mask;               // T x H, dropout scale (0 or 1/(1-p))
  Mat ff1_out;                // T x H, after ReLU and dropout
  Mat ff2_pre;                // T x H
  Mat ff2_mask;               // T x H
  Mat ff2_out;                // T x H, input to pooling
  Mat attn_pre;               // T x A, before tanh
  Mat attn_tanh;              // T x A
  std::vector<double> frame_logits;  // T
  std::vector<double> attn_weights;  // T, softmax over frames
  std::vector<double> mean;          // H, attention-weighted mean
  std::vector<double> raw_var;       // H, before the max(., 0) clamp
  std::vector<double> stddev;        // H, sqrt(clamped var + kPoolEps)
  std::vector<double> pooled;        // 2H
  std::vector<double> embedding;     // E
  double embed_norm = 0.0;
  double w_norm = 0.0;
  double score = 0.0;
};

struct ForwardOutput {
  double score = 0.0;
  std::vector<double> embedding;
  std::unique_ptr<ForwardCache> cache;  // null in eval mode
};

/// Numerically stable softmax (max subtraction). Output sums to 1 within
/// 1e-9 for any finite logits, including magnitudes around 1e4.
std::vector<double> Softmax(std::span<const double> logits);

/// dL/dlogits given y = Softmax(logits) and dL/dy.
std::vector<double> SoftmaxBackward(std::span<const double> y,
                                    std::span<const double> grad_y);

/// Per layer and channel, subtract the mean over frames and divide by
/// sqrt(variance + kNormEps). Population variance, no learned affine.
NormalizedFeatures TemporalNormalize(const LayeredFeatures &f);

/// mixed[t] = sum_l alpha[l] * normalized[l][t].
Mat LayerMix(const NormalizedFeatures &normalized,
             std::span<const double> alpha);

double CosineScore(std::span<const double> embedding,
                   std::span<const double> w_genuine);

/// softplus(scale * (margin_genuine - S)) for genuine labels,
/// softplus(scale * (S - margin_spoof)) otherwise. Stable for any scale.
double OcSoftmaxLoss(double score, Label label, const LossConfig &cfg);

/// d(OcSoftmaxLoss)/dS.
double OcSoftmaxLossGrad(double score, Label label, const LossConfig &cfg);

/// Full forward pass: temporal normalization, layer mixing, two ReLU
/// feed-forward layers with dropout, attentive statistical pooling, linear
/// embedding, cosine score. Dropout applies in train mode only (inverted
/// scaling); rng may be null in eval mode or when dropout_p is 0.
ForwardOutput Forward(const LayeredFeatures &features, const ModelParams &p,
                      Mode mode, double dropout_p, Rng *rng);

/// Exact reverse-mode gradient of OcSoftmaxLoss(Forward(...)) for one
/// utterance with respect to every parameter.
Gradients Backward(const ForwardCache &cache, const ModelParams &p,
                   Label label, const LossConfig &cfg);

}  // namespace spoofkit

#endif  // SPOOFKIT_MODEL_H_
