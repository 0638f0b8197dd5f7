// src/trainer.cc

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

#include "spoofkit/trainer.h"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "spoofkit/error.h"
#include "spoofkit/parallel.h"

namespace spoofkit {

namespace {

void AccumulateInto(Gradients *acc, const Gradients &g, double scale) {
  std::vector<std::span<const double>> src;
  g.ForEachTensor([&src](std::string_view, std::span<const double> t) {
    src.push_back(t);
  });
  std::size_t idx = 0;
  acc->ForEachTensor([&](std::string_view, std::span<double> t) {
    std::span<const double> s = src[idx++];
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += scale * s[i];
  });
}

void ScaleInPlace(Gradients *g, double scale) {
  g->ForEachTensor([scale](std::string_view, std::span<double> t) {
    for (double &v : t) v *= scale;
  });
}

Label TargetLabel(const ManifestEntry &entry, const AugmentDecision *decision) {
  if (decision != nullptr && decision->splice) return Label::kSpoof;
  return IsFakeLabel(entry.label) ? Label::kSpoof : Label::kGenuine;
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

BatchGradients ComputeBatchGradients(
    const std::vector<const LayeredFeatures *> &features,
    const std::vector<Label> &labels, const std::vector<std::uint64_t> &seeds,
    const ModelParams &params, const LossConfig &loss_cfg, double dropout_p,
    int threads) {
  std::size_t n = features.size();
  if (labels.size() != n || seeds.size() != n)
    throw Error("batch feature/label/seed count mismatch");
  if (n == 0) throw Error("empty batch");

  std::vector<double> losses(n);
  std::vector<Gradients> grads(n);
  ParallelFor(n, threads, [&](std::size_t i) {
    Rng rng(seeds[i]);
    ForwardOutput out =
        Forward(*features[i], params, Mode::kTrain, dropout_p, &rng);
    losses[i] = OcSoftmaxLoss(out.score, labels[i], loss_cfg);
    grads[i] = Backward(*out.cache, params, labels[i], loss_cfg);
  });

  BatchGradients result;
  result.grads = ModelParams::ZerosLike(params);
  double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.mean_loss += losses[i] * inv_n;
    AccumulateInto(&result.grads, grads[i], inv_n);
  }
  return result;
}

TrainResult TrainLoop(const Manifest &train_set, const Manifest &dev_set,
                      const ToyExtractor &extractor,
                      const ModelParams &initial, const LossConfig &loss_cfg,
                      const AugmentConfig &augment, const TrainConfig &cfg) {
  if (train_set.empty()) throw Error("training manifest is empty");
  if (dev_set.empty()) throw Error("dev manifest is empty");
  if (cfg.batch_size < 1 || cfg.accumulation_steps < 1 ||
      cfg.patience_epochs < 1 || cfg.max_epochs < 1)
    throw Error("invalid training configuration");
  if (!(loss_cfg.margin_genuine > loss_cfg.margin_spoof))
    throw Error("genuine margin must exceed spoof margin");

  std::uint64_t extractor_checksum = extractor.Checksum();

  // Load all training audio once; augmented variants are derived per epoch.
  std::size_t n_train = train_set.size();
  std::vector<Waveform> train_waves(n_train);
  std::vector<std::optional<LayeredFeatures>> clean_features(n_train);
  std::unordered_map<std::string, std::size_t> index_by_id;
  for (std::size_t i = 0; i < n_train; ++i) {
    const auto &e = train_set[i];
    index_by_id.emplace(e.id, i);
    if (e.path.extension() == ".lft") {
      if (augment.enabled)
        throw Error("cannot train with augmentation on feature files: " +
                     e.path.string());
      clean_features[i] = LoadFeatures(e.path);
    } else {
      train_waves[i] = ReadWav(e.path, extractor.config().sample_rate_hz);
      clean_features[i] = extractor.Extract(train_waves[i]);
    }
  }
  std::vector<std::size_t> train_lengths(n_train);
  for (std::size_t i = 0; i < n_train; ++i)
    train_lengths[i] = train_waves[i].samples.size();

  // Dev audio is never augmented; extract its features once.
  std::vector<LayeredFeatures> dev_features;
  std::vector<Label> dev_labels;
  dev_features.reserve(dev_set.size());
  for (const auto &e : dev_set) {
    if (e.path.extension() == ".lft") {
      dev_features.push_back(LoadFeatures(e.path));
    } else {
      Waveform w = ReadWav(e.path, extractor.config().sample_rate_hz);
      dev_features.push_back(extractor.Extract(w));
    }
    dev_labels.push_back(IsFakeLabel(e.label) ? Label::kSpoof
                                              : Label::kGenuine);
  }

  ModelParams params = initial;
  AdamState adam_state = AdamState::For(params);
  EarlyStopper stopper(cfg.patience_epochs);

  TrainResult result;
  result.best_params = params;
  result.best_dev_loss = std::numeric_limits<double>::infinity();

  Gradients window = ModelParams::ZerosLike(params);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    EpochAugmentPlan plan;
    plan.decisions.resize(n_train);
    if (augment.enabled) {
      plan = BuildEpochPlan(train_set, train_lengths,
                            DeriveSeed(cfg.seed, "plan", epoch), augment);
    }

    std::vector<std::size_t> order(n_train);
    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng(DeriveSeed(cfg.seed, "shuffle", epoch));
    shuffle_rng.Shuffle(&order);

    // Per-epoch feature realization: augmented utterances are re-extracted,
    // clean ones reuse the cached extraction.
    double epoch_loss = 0.0;
    std::size_t batches_in_window = 0;
    std::vector<LayeredFeatures> scratch;
    for (std::size_t start = 0; start < n_train;
         start += static_cast<std::size_t>(cfg.batch_size)) {
      std::size_t end =
          std::min(n_train, start + static_cast<std::size_t>(cfg.batch_size));
      std::size_t bsize = end - start;
      scratch.assign(bsize, LayeredFeatures{});
      std::vector<const LayeredFeatures *> batch_features(bsize);
      std::vector<Label> batch_labels(bsize);
      std::vector<std::uint64_t> batch_seeds(bsize);

      ParallelFor(bsize, cfg.threads, [&](std::size_t bi) {
        std::size_t idx = order[start + bi];
        const auto &entry = train_set[idx];
        const AugmentDecision &dec = plan.decisions[idx];
        if (dec.fir || dec.splice) {
          Waveform aug = ApplyDecision(
              train_waves[idx], dec, augment,
              [&](const std::string &donor_id) -> const Waveform & {
                auto it = index_by_id.find(donor_id);
                if (it == index_by_id.end())
                  throw Error("splice donor not in manifest: " + donor_id);
                return train_waves[it->second];
              });
          scratch[bi] = extractor.Extract(aug);
          batch_features[bi] = &scratch[bi];
        } else {
          batch_features[bi] = &*clean_features[idx];
        }
        batch_labels[bi] = TargetLabel(entry, &dec);
        batch_seeds[bi] = DeriveSeed(cfg.seed, "dropout", epoch, entry.id);
      });

      BatchGradients bg =
          ComputeBatchGradients(batch_features, batch_labels, batch_seeds,
                                params, loss_cfg, cfg.dropout, cfg.threads);
      epoch_loss += bg.mean_loss * static_cast<double>(bsize);
      AccumulateInto(&window, bg.grads, 1.0);
      ++batches_in_window;
      if (batches_in_window == static_cast<std::size_t>(cfg.accumulation_steps)) {
        ScaleInPlace(&window, 1.0 / static_cast<double>(batches_in_window));
        AdamStep(&params, window, &adam_state, cfg.adam);
        ++result.optimizer_steps;
        window = ModelParams::ZerosLike(params);
        batches_in_window = 0;
      }
    }
    if (batches_in_window > 0) {
      ScaleInPlace(&window, 1.0 / static_cast<double>(batches_in_window));
      AdamStep(&params, window, &adam_state, cfg.adam);
      ++result.optimizer_steps;
      window = ModelParams::ZerosLike(params);
      batches_in_window = 0;
    }
    epoch_loss /= static_cast<double>(n_train);

    // Dev evaluation in eval mode.
    std::vector<double> dev_losses(dev_features.size());
    ParallelFor(dev_features.size(), cfg.threads, [&](std::size_t i) {
      ForwardOutput out =
          Forward(dev_features[i], params, Mode::kEval, 0.0, nullptr);
      dev_losses[i] = OcSoftmaxLoss(out.score, dev_labels[i], loss_cfg);
    });
    double dev_loss = 0.0;
    for (double l : dev_losses) dev_loss += l;
    dev_loss /= static_cast<double>(dev_losses.size());

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = epoch_loss;
    stats.dev_loss = dev_loss;
    stats.alpha = Softmax(params.layer_logits);
    result.history.push_back(stats);

    bool stop = stopper.Observe(dev_loss);
    if (stopper.Improved()) {
      result.best_params = params;
      result.best_epoch = epoch;
      result.best_dev_loss = dev_loss;
      result.best_train_loss = epoch_loss;
    }
    if (stop) {
      result.stopped_early = true;
      break;
    }
  }

  if (extractor.Checksum() != extractor_checksum)
    throw Error("frozen extractor parameters changed during training");
  return result;
}

void WriteHistoryCsv(const std::filesystem::path &path,
                     const std::vector<EpochStats> &history) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write history: " + path.string());
  std::size_t num_alpha = history.empty() ? 0 : history.front().alpha.size();
  out << "epoch,train_loss,dev_loss";
  for (std::size_t l = 0; l < num_alpha; ++l) out << ",alpha_" << l;
  out << "\n";
  for (const auto &row : history) {
    out << row.epoch << "," << FormatDouble(row.train_loss) << ","
        << FormatDouble(row.dev_loss);
    for (double a : row.alpha) out << "," << FormatDouble(a);
    out << "\n";
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace spoofkit
