// spoofkit/adam.h

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

#ifndef SPOOFKIT_ADAM_H_
#define SPOOFKIT_ADAM_H_

#include <cmath>
#include <cstdint>

#include "spoofkit/error.h"
#include "spoofkit/model.h"

namespace spoofkit {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// First and second moment estimates, shaped exactly like the parameters.
struct AdamState {
  Gradients m;
  Gradients v;
  std::int64_t step = 0;

  static AdamState For(const ModelParams &params) {
    return {ModelParams::ZerosLike(params), ModelParams::ZerosLike(params), 0};
  }
};

/// One bias-corrected Adam update:
///   m <- b1*m + (1-b1)*g,  v <- b2*v + (1-b2)*g^2,
///   theta <- theta - lr * mhat / (sqrt(vhat) + eps).
/// Non-finite gradients abort with a diagnostic.
inline void AdamStep(ModelParams *params, const Gradients &grads,
                     AdamState *state, const AdamConfig &cfg) {
  if (!(params->dims == grads.dims))
    throw Error("gradient shape does not match parameters");
  grads.ForEachTensor([](std::string_view name, std::span<const double> t) {
    for (double g : t)
      if (!std::isfinite(g))
        throw Error("non-finite gradient in tensor " + std::string(name));
  });

  state->step += 1;
  double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state->step));
  double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state->step));

  // Walk the four structures in lockstep; tensor order is fixed.
  std::size_t tensor_idx = 0;
  std::vector<std::span<double>> m_spans, v_spans;
  std::vector<std::span<const double>> g_spans;
  state->m.ForEachTensor([&m_spans](std::string_view, std::span<double> t) {
    m_spans.push_back(t);
  });
  state->v.ForEachTensor([&v_spans](std::string_view, std::span<double> t) {
    v_spans.push_back(t);
  });
  grads.ForEachTensor(
      [&g_spans](std::string_view, std::span<const double> t) {
        g_spans.push_back(t);
      });
  params->ForEachTensor([&](std::string_view name, std::span<double> theta) {
    std::span<double> m = m_spans[tensor_idx];
    std::span<double> v = v_spans[tensor_idx];
    std::span<const double> g = g_spans[tensor_idx];
    if (m.size() != theta.size() || g.size() != theta.size())
      throw Error("moment shape does not match parameter tensor " +
                   std::string(name));
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
      double mhat = m[i] / bc1;
      double vhat = v[i] / bc2;
      theta[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.eps);
    }
    ++tensor_idx;
  });
}

}  // namespace spoofkit

#endif  // SPOOFKIT_ADAM_H_
