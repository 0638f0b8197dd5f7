// src/model.cc

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

#include "spoofkit/model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spoofkit/error.h"

namespace spoofkit {

namespace {

double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                  : std::exp(x) / (1.0 + std::exp(x));
}

void FillGaussian(Rng *rng, double scale, std::vector<double> *v) {
  for (double &x : *v) x = scale * rng->Gaussian();
}

double GuardedNorm(std::span<const double> v) {
  return std::max(std::sqrt(Dot(v, v)), kCosineEps);
}

}  // namespace

ModelParams ModelParams::Init(const ModelDims &dims, Rng *rng) {
  ModelParams p;
  p.dims = dims;
  p.layer_logits.assign(dims.num_layers_p1, 0.0);
  p.ff1_w = Mat(dims.hidden_dim, dims.feat_dim);
  FillGaussian(rng, 1.0 / std::sqrt(static_cast<double>(dims.feat_dim)),
               &p.ff1_w.a);
  p.ff1_b.assign(dims.hidden_dim, 0.0);
  p.ff2_w = Mat(dims.hidden_dim, dims.hidden_dim);
  FillGaussian(rng, 1.0 / std::sqrt(static_cast<double>(dims.hidden_dim)),
               &p.ff2_w.a);
  p.ff2_b.assign(dims.hidden_dim, 0.0);
  p.attn_w = Mat(dims.attn_dim, dims.hidden_dim);
  FillGaussian(rng, 1.0 / std::sqrt(static_cast<double>(dims.hidden_dim)),
               &p.attn_w.a);
  p.attn_b.assign(dims.attn_dim, 0.0);
  p.attn_v.resize(dims.attn_dim);
  FillGaussian(rng, 1.0 / std::sqrt(static_cast<double>(dims.attn_dim)),
               &p.attn_v);
  p.attn_k = 0.0;
  p.embed_w = Mat(dims.embed_dim, 2 * dims.hidden_dim);
  FillGaussian(rng, 1.0 / std::sqrt(static_cast<double>(2 * dims.hidden_dim)),
               &p.embed_w.a);
  p.embed_b.assign(dims.embed_dim, 0.0);
  p.w_genuine.resize(dims.embed_dim);
  FillGaussian(rng, 1.0 / std::sqrt(static_cast<double>(dims.embed_dim)),
               &p.w_genuine);
  return p;
}

ModelParams ModelParams::ZerosLike(const ModelParams &other) {
  ModelParams p;
  p.dims = other.dims;
  p.layer_logits.assign(other.layer_logits.size(), 0.0);
  p.ff1_w = Mat(other.ff1_w.rows, other.ff1_w.cols);
  p.ff1_b.assign(other.ff1_b.size(), 0.0);
  p.ff2_w = Mat(other.ff2_w.rows, other.ff2_w.cols);
  p.ff2_b.assign(other.ff2_b.size(), 0.0);
  p.attn_w = Mat(other.attn_w.rows, other.attn_w.cols);
  p.attn_b.assign(other.attn_b.size(), 0.0);
  p.attn_v.assign(other.attn_v.size(), 0.0);
  p.attn_k = 0.0;
  p.embed_w = Mat(other.embed_w.rows, other.embed_w.cols);
  p.embed_b.assign(other.embed_b.size(), 0.0);
  p.w_genuine.assign(other.w_genuine.size(), 0.0);
  return p;
}

void ModelParams::ForEachTensor(
    const std::function<void(std::string_view, std::span<double>)> &fn) {
  fn("layer_logits", layer_logits);
  fn("ff1_w", ff1_w.a);
  fn("ff1_b", ff1_b);
  fn("ff2_w", ff2_w.a);
  fn("ff2_b", ff2_b);
  fn("attn_w", attn_w.a);
  fn("attn_b", attn_b);
  fn("attn_v", attn_v);
  fn("attn_k", std::span<double>(&attn_k, 1));
  fn("embed_w", embed_w.a);
  fn("embed_b", embed_b);
  fn("w_genuine", w_genuine);
}

void ModelParams::ForEachTensor(
    const std::function<void(std::string_view, std::span<const double>)> &fn)
    const {
  fn("layer_logits", layer_logits);
  fn("ff1_w", ff1_w.a);
  fn("ff1_b", ff1_b);
  fn("ff2_w", ff2_w.a);
  fn("ff2_b", ff2_b);
  fn("attn_w", attn_w.a);
  fn("attn_b", attn_b);
  fn("attn_v", attn_v);
  fn("attn_k", std::span<const double>(&attn_k, 1));
  fn("embed_w", embed_w.a);
  fn("embed_b", embed_b);
  fn("w_genuine", w_genuine);
}

std::size_t ModelParams::NumCoords() const {
  std::size_t n = 0;
  ForEachTensor([&n](std::string_view, std::span<const double> t) {
    n += t.size();
  });
  return n;
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  double lmax = -std::numeric_limits<double>::infinity();
  for (double v : logits) lmax = std::max(lmax, v);
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - lmax);
    sum += out[i];
  }
  for (double &v : out) v /= sum;
  return out;
}

std::vector<double> SoftmaxBackward(std::span<const double> y,
                                    std::span<const double> grad_y) {
  double inner = Dot(y, grad_y);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] * (grad_y[i] - inner);
  return out;
}

NormalizedFeatures TemporalNormalize(const LayeredFeatures &f) {
  NormalizedFeatures out;
  out.num_layers_p1 = f.num_layers_p1;
  out.num_frames = f.num_frames;
  out.feat_dim = f.feat_dim;
  out.data.resize(f.data.size());
  double inv_t = 1.0 / static_cast<double>(f.num_frames);
  for (std::size_t l = 0; l < f.num_layers_p1; ++l) {
    for (std::size_t d = 0; d < f.feat_dim; ++d) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (std::size_t t = 0; t < f.num_frames; ++t) {
        double v = f.At(l, t, d);
        sum += v;
        sum_sq += v * v;
      }
      double mean = sum * inv_t;
      double var = sum_sq * inv_t - mean * mean;
      double inv_std = 1.0 / std::sqrt(var + kNormEps);
      for (std::size_t t = 0; t < f.num_frames; ++t)
        out.At(l, t, d) = (f.At(l, t, d) - mean) * inv_std;
    }
  }
  return out;
}

Mat LayerMix(const NormalizedFeatures &normalized,
             std::span<const double> alpha) {
  if (alpha.size() != normalized.num_layers_p1)
    throw Error("layer weight count does not match the feature tensor");
  Mat mixed(normalized.num_frames, normalized.feat_dim);
  for (std::size_t l = 0; l < normalized.num_layers_p1; ++l) {
    double a = alpha[l];
    const double *src = normalized.data.data() +
                        l * normalized.num_frames * normalized.feat_dim;
    for (std::size_t i = 0; i < mixed.a.size(); ++i) mixed.a[i] += a * src[i];
  }
  return mixed;
}

double CosineScore(std::span<const double> embedding,
                   std::span<const double> w_genuine) {
  double ne = GuardedNorm(embedding);
  double nw = GuardedNorm(w_genuine);
  return Dot(embedding, w_genuine) / (ne * nw);
}

double OcSoftmaxLoss(double score, Label label, const LossConfig &cfg) {
  double arg = label == Label::kGenuine ? cfg.margin_genuine - score
                                        : score - cfg.margin_spoof;
  return Softplus(cfg.scale * arg);
}

double OcSoftmaxLossGrad(double score, Label label, const LossConfig &cfg) {
  if (label == Label::kGenuine)
    return -cfg.scale * Sigmoid(cfg.scale * (cfg.margin_genuine - score));
  return cfg.scale * Sigmoid(cfg.scale * (score - cfg.margin_spoof));
}

namespace {

// ReLU row with optional inverted dropout. Mask entries hold the applied
// scale so the backward pass replays them exactly.
void ReluDropoutRow(std::span<const double> pre, std::span<double> out,
                    std::span<double> mask, bool use_dropout, double keep_inv,
                    double dropout_p, Rng *rng) {
  for (std::size_t i = 0; i < pre.size(); ++i) {
    double r = pre[i] > 0.0 ? pre[i] : 0.0;
    if (use_dropout) {
      double scale = rng->Uniform() < dropout_p ? 0.0 : keep_inv;
      mask[i] = scale;
      out[i] = r * scale;
    } else {
      out[i] = r;
    }
  }
}

}  // namespace

ForwardOutput Forward(const LayeredFeatures &features, const ModelParams &p,
                      Mode mode, double dropout_p, Rng *rng) {
  const ModelDims &dims = p.dims;
  if (features.num_layers_p1 != dims.num_layers_p1)
    throw Error("feature layer count " + std::to_string(features.num_layers_p1) +
                 " does not match model (" +
                 std::to_string(dims.num_layers_p1) + ")");
  if (features.feat_dim != dims.feat_dim)
    throw Error("feature dim " + std::to_string(features.feat_dim) +
                 " does not match model (" + std::to_string(dims.feat_dim) + ")");
  if (features.num_frames == 0) throw Error("feature tensor has no frames");
  if (!(dropout_p >= 0.0 && dropout_p < 1.0))
    throw Error("dropout probability must be in [0, 1)");

  bool train = mode == Mode::kTrain;
  bool use_dropout = train && dropout_p > 0.0;
  if (use_dropout && rng == nullptr)
    throw Error("train-mode forward with dropout needs an rng");
  double keep_inv = use_dropout ? 1.0 / (1.0 - dropout_p) : 1.0;

  std::size_t frames = features.num_frames;
  std::size_t hidden = dims.hidden_dim;
  std::size_t attn = dims.attn_dim;
  std::size_t embed = dims.embed_dim;

  auto cache = std::make_unique<ForwardCache>();
  cache->normalized = TemporalNormalize(features);
  cache->alpha = Softmax(p.layer_logits);
  cache->mixed = LayerMix(cache->normalized, cache->alpha);

  cache->ff1_pre = Mat(frames, hidden);
  cache->ff1_out = Mat(frames, hidden);
  cache->ff2_pre = Mat(frames, hidden);
  cache->ff2_out = Mat(frames, hidden);
  if (use_dropout) {
    cache->ff1_mask = Mat(frames, hidden);
    cache->ff2_mask = Mat(frames, hidden);
  }
  for (std::size_t t = 0; t < frames; ++t) {
    MatVec(p.ff1_w, cache->mixed.Row(t), cache->ff1_pre.Row(t));
    for (std::size_t h = 0; h < hidden; ++h) cache->ff1_pre(t, h) += p.ff1_b[h];
    ReluDropoutRow(cache->ff1_pre.Row(t), cache->ff1_out.Row(t),
                   use_dropout ? cache->ff1_mask.Row(t) : std::span<double>{},
                   use_dropout, keep_inv, dropout_p, rng);
    MatVec(p.ff2_w, cache->ff1_out.Row(t), cache->ff2_pre.Row(t));
    for (std::size_t h = 0; h < hidden; ++h) cache->ff2_pre(t, h) += p.ff2_b[h];
    ReluDropoutRow(cache->ff2_pre.Row(t), cache->ff2_out.Row(t),
                   use_dropout ? cache->ff2_mask.Row(t) : std::span<double>{},
                   use_dropout, keep_inv, dropout_p, rng);
  }

  // Attentive statistical pooling: scalar attention per frame, weighted mean
  // and (biased) standard deviation concatenated.
  cache->attn_pre = Mat(frames, attn);
  cache->attn_tanh = Mat(frames, attn);
  cache->frame_logits.resize(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    MatVec(p.attn_w, cache->ff2_out.Row(t), cache->attn_pre.Row(t));
    double e = p.attn_k;
    for (std::size_t a = 0; a < attn; ++a) {
      cache->attn_pre(t, a) += p.attn_b[a];
      double u = std::tanh(cache->attn_pre(t, a));
      cache->attn_tanh(t, a) = u;
      e += p.attn_v[a] * u;
    }
    cache->frame_logits[t] = e;
  }
  cache->attn_weights = Softmax(cache->frame_logits);

  cache->mean.assign(hidden, 0.0);
  cache->raw_var.assign(hidden, 0.0);
  cache->stddev.resize(hidden);
  for (std::size_t t = 0; t < frames; ++t) {
    double a = cache->attn_weights[t];
    for (std::size_t h = 0; h < hidden; ++h) {
      double v = cache->ff2_out(t, h);
      cache->mean[h] += a * v;
      cache->raw_var[h] += a * v * v;
    }
  }
  cache->pooled.resize(2 * hidden);
  for (std::size_t h = 0; h < hidden; ++h) {
    cache->raw_var[h] -= cache->mean[h] * cache->mean[h];
    cache->stddev[h] = std::sqrt(std::max(cache->raw_var[h], 0.0) + kPoolEps);
    cache->pooled[h] = cache->mean[h];
    cache->pooled[hidden + h] = cache->stddev[h];
  }

  cache->embedding.resize(embed);
  MatVec(p.embed_w, cache->pooled, cache->embedding);
  for (std::size_t e = 0; e < embed; ++e) cache->embedding[e] += p.embed_b[e];

  cache->embed_norm = GuardedNorm(cache->embedding);
  cache->w_norm = GuardedNorm(p.w_genuine);
  cache->score = Dot(cache->embedding, p.w_genuine) /
                 (cache->embed_norm * cache->w_norm);

  ForwardOutput out;
  out.score = cache->score;
  out.embedding = cache->embedding;
  if (train) out.cache = std::move(cache);
  return out;
}

Gradients Backward(const ForwardCache &cache, const ModelParams &p,
                   Label label, const LossConfig &cfg) {
  const ModelDims &dims = p.dims;
  std::size_t frames = cache.ff2_out.rows;
  std::size_t hidden = dims.hidden_dim;
  std::size_t attn = dims.attn_dim;
  std::size_t embed = dims.embed_dim;
  if (cache.pooled.size() != 2 * hidden || cache.embedding.size() != embed)
    throw Error("stale or mismatched forward cache");

  Gradients g = ModelParams::ZerosLike(p);
  double d_score = OcSoftmaxLossGrad(cache.score, label, cfg);

  // Cosine score.
  double ne = cache.embed_norm;
  double nw = cache.w_norm;
  double s = cache.score;
  std::vector<double> g_embed(embed);
  for (std::size_t e = 0; e < embed; ++e) {
    g_embed[e] = d_score * (p.w_genuine[e] / (ne * nw) -
                            s * cache.embedding[e] / (ne * ne));
    g.w_genuine[e] = d_score * (cache.embedding[e] / (ne * nw) -
                                s * p.w_genuine[e] / (nw * nw));
  }

  // Linear embedding.
  std::vector<double> g_pooled(2 * hidden, 0.0);
  OuterAdd(&g.embed_w, g_embed, cache.pooled);
  for (std::size_t e = 0; e < embed; ++e) g.embed_b[e] += g_embed[e];
  MatTVecAdd(p.embed_w, g_embed, g_pooled);

  // Pooling statistics.
  std::vector<double> g_q(hidden);
  for (std::size_t h = 0; h < hidden; ++h) {
    double g_std = g_pooled[hidden + h];
    g_q[h] = cache.raw_var[h] > 0.0 ? g_std / (2.0 * cache.stddev[h]) : 0.0;
  }
  Mat g_seq(frames, hidden);  // gradient into ff2_out
  std::vector<double> g_attn_weight(frames, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    double a = cache.attn_weights[t];
    double acc = 0.0;
    for (std::size_t h = 0; h < hidden; ++h) {
      double v = cache.ff2_out(t, h);
      double g_mean = g_pooled[h];
      g_seq(t, h) = a * (g_mean + 2.0 * g_q[h] * (v - cache.mean[h]));
      acc += g_mean * v + g_q[h] * (v * v - 2.0 * cache.mean[h] * v);
    }
    g_attn_weight[t] = acc;
  }

  // Attention weights through the frame softmax and the tanh gate.
  std::vector<double> g_frame_logits =
      SoftmaxBackward(cache.attn_weights, g_attn_weight);
  std::vector<double> g_z(attn);
  for (std::size_t t = 0; t < frames; ++t) {
    double ge = g_frame_logits[t];
    g.attn_k += ge;
    for (std::size_t a = 0; a < attn; ++a) {
      double u = cache.attn_tanh(t, a);
      g.attn_v[a] += ge * u;
      g_z[a] = ge * p.attn_v[a] * (1.0 - u * u);
      g.attn_b[a] += g_z[a];
    }
    OuterAdd(&g.attn_w, g_z, cache.ff2_out.Row(t));
    MatTVecAdd(p.attn_w, g_z, g_seq.Row(t));
  }

  // Feed-forward stack, reversed.
  bool has_mask = !cache.ff1_mask.a.empty();
  Mat g_mixed(frames, dims.feat_dim);
  std::vector<double> g_z2(hidden);
  std::vector<double> g_z1(hidden);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t h = 0; h < hidden; ++h) {
      double gr = g_seq(t, h);
      if (has_mask) gr *= cache.ff2_mask(t, h);
      g_z2[h] = cache.ff2_pre(t, h) > 0.0 ? gr : 0.0;
      g.ff2_b[h] += g_z2[h];
    }
    OuterAdd(&g.ff2_w, g_z2, cache.ff1_out.Row(t));
    std::vector<double> g_h1(hidden, 0.0);
    MatTVecAdd(p.ff2_w, g_z2, g_h1);
    for (std::size_t h = 0; h < hidden; ++h) {
      double gr = g_h1[h];
      if (has_mask) gr *= cache.ff1_mask(t, h);
      g_z1[h] = cache.ff1_pre(t, h) > 0.0 ? gr : 0.0;
      g.ff1_b[h] += g_z1[h];
    }
    OuterAdd(&g.ff1_w, g_z1, cache.mixed.Row(t));
    MatTVecAdd(p.ff1_w, g_z1, g_mixed.Row(t));
  }

  // Layer mixing back to the logits.
  std::vector<double> g_alpha(dims.num_layers_p1, 0.0);
  for (std::size_t l = 0; l < dims.num_layers_p1; ++l) {
    const double *src = cache.normalized.data.data() +
                        l * frames * dims.feat_dim;
    double acc = 0.0;
    for (std::size_t i = 0; i < g_mixed.a.size(); ++i)
      acc += g_mixed.a[i] * src[i];
    g_alpha[l] = acc;
  }
  std::vector<double> g_logits = SoftmaxBackward(cache.alpha, g_alpha);
  for (std::size_t l = 0; l < dims.num_layers_p1; ++l)
    g.layer_logits[l] = g_logits[l];

  return g;
}

}  // namespace spoofkit
