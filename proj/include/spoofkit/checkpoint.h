// spoofkit/checkpoint.h

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

#ifndef SPOOFKIT_CHECKPOINT_H_
#define SPOOFKIT_CHECKPOINT_H_

#include <filesystem>
#include <string>

#include "spoofkit/model.h"
#include "spoofkit/toy_extractor.h"

namespace spoofkit {

/// Everything needed to score audio with a trained model: the classifier
/// parameters, the loss configuration they were trained with, and the frozen
/// extractor configuration that produced their input features.
struct Checkpoint {
  ModelParams params;
  LossConfig loss;
  ToyExtractorConfig extractor;
  int epoch = 0;            // epoch the parameters were taken from
  double dev_loss = 0.0;    // dev loss at that epoch
  double train_loss = 0.0;  // train loss at that epoch
};

/// File layout: magic "SPK1", little-endian u32 version, u32 JSON header
/// length, the JSON header (dimensions, loss and extractor configuration,
/// training metadata, tensor order), then every parameter tensor as
/// little-endian IEEE-754 doubles in declared order. Writing the same
/// checkpoint twice produces byte-identical files.
void SaveCheckpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
Checkpoint LoadCheckpoint(const std::filesystem::path &path);

}  // namespace spoofkit

#endif  // SPOOFKIT_CHECKPOINT_H_
