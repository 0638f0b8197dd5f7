// spoofkit/trainer.h

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

#ifndef SPOOFKIT_TRAINER_H_
#define SPOOFKIT_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <vector>

#include "spoofkit/adam.h"
#include "spoofkit/augment_plan.h"
#include "spoofkit/manifest.h"
#include "spoofkit/model.h"
#include "spoofkit/toy_extractor.h"

namespace spoofkit {

struct TrainConfig {
  AdamConfig adam;
  double dropout = 0.2;
  int batch_size = 8;
  int accumulation_steps = 8;  // optimizer steps once per this many batches
  int patience_epochs = 10;
  int max_epochs = 50;
  std::uint64_t seed = 7;
  int threads = 1;
};

/// Dev-loss early stopping. Improvement means strictly lower loss; training
/// stops once `patience` consecutive epochs fail to improve.
class EarlyStopper {
 public:
  explicit EarlyStopper(int patience) : patience_(patience) {}

  /// Returns true when training should stop after this epoch.
  bool Observe(double dev_loss) {
    if (dev_loss < best_) {
      best_ = dev_loss;
      since_ = 0;
    } else {
      ++since_;
    }
    return since_ >= patience_;
  }

  bool Improved() const { return since_ == 0; }
  double best() const { return best_; }
  int epochs_since_improvement() const { return since_; }

 private:
  int patience_;
  double best_ = std::numeric_limits<double>::infinity();
  int since_ = 0;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double dev_loss = 0.0;
  std::vector<double> alpha;  // layer weights after the epoch's updates
};

struct TrainResult {
  ModelParams best_params;
  int best_epoch = 0;
  double best_dev_loss = 0.0;
  double best_train_loss = 0.0;
  std::vector<EpochStats> history;
  std::int64_t optimizer_steps = 0;
  bool stopped_early = false;
};

/// Mean loss and mean per-parameter gradient over a batch. Dropout seeds are
/// provided per utterance so that replays and gradient pooling are exact;
/// gradients are reduced in utterance order.
struct BatchGradients {
  double mean_loss = 0.0;
  Gradients grads;
};
BatchGradients ComputeBatchGradients(
    const std::vector<const LayeredFeatures *> &features,
    const std::vector<Label> &labels, const std::vector<std::uint64_t> &seeds,
    const ModelParams &params, const LossConfig &loss_cfg, double dropout_p,
    int threads);

/// Full training loop: per epoch, builds the augmentation plan, shuffles,
/// accumulates gradients over `accumulation_steps` mini-batches per optimizer
/// step, evaluates dev loss in eval mode, and keeps the parameters with the
/// lowest dev loss. Stops at max_epochs or when the patience runs out. The
/// extractor is frozen; its checksum is verified unchanged.
TrainResult TrainLoop(const Manifest &train_set, const Manifest &dev_set,
                      const ToyExtractor &extractor,
                      const ModelParams &initial, const LossConfig &loss_cfg,
                      const AugmentConfig &augment, const TrainConfig &cfg);

/// CSV with one row per epoch: epoch, train_loss, dev_loss, alpha_0..alpha_L.
void WriteHistoryCsv(const std::filesystem::path &path,
                     const std::vector<EpochStats> &history);

}  // namespace spoofkit

#endif  // SPOOFKIT_TRAINER_H_
