// spoofkit/scoring.h

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

#ifndef SPOOFKIT_SCORING_H_
#define SPOOFKIT_SCORING_H_

#include <filesystem>
#include <string>
#include <vector>

#include "spoofkit/checkpoint.h"
#include "spoofkit/eer.h"
#include "spoofkit/manifest.h"

namespace spoofkit {

struct ScoreRow {
  std::string id;
  double score = 0.0;
  Label label = Label::kGenuine;
};

/// Eval-mode forward over every manifest entry, in manifest order. Entries
/// pointing at ".lft" files are loaded directly; WAV entries go through the
/// frozen extractor reconstructed from the checkpoint.
std::vector<ScoreRow> ScoreDataset(const Checkpoint &ckpt,
                                   const Manifest &manifest, int threads);

/// Splits rows into genuine and fake (spoof or partial) scores.
ScoreSet ToScoreSet(const std::vector<ScoreRow> &rows);

/// Score file: one line per utterance, `<id>\t<score>\t<label>`.
void WriteScores(const std::filesystem::path &path,
                 const std::vector<ScoreRow> &rows);
std::vector<ScoreRow> ReadScores(const std::filesystem::path &path);

/// Layer weights of a checkpoint: (layer index, softmax weight) rows. The
/// weights sum to one.
std::vector<std::pair<std::size_t, double>> LayerWeightReport(
    const Checkpoint &ckpt);
void WriteLayerWeightsCsv(const std::filesystem::path &path,
                          const std::vector<std::pair<std::size_t, double>> &rows);

}  // namespace spoofkit

#endif  // SPOOFKIT_SCORING_H_
