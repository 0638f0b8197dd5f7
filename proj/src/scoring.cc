// src/scoring.cc

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

#include "spoofkit/scoring.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spoofkit/error.h"
#include "spoofkit/parallel.h"

namespace spoofkit {

namespace {

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<ScoreRow> ScoreDataset(const Checkpoint &ckpt,
                                   const Manifest &manifest, int threads) {
  if (static_cast<std::size_t>(ckpt.extractor.num_layers) + 1 !=
          ckpt.params.dims.num_layers_p1 ||
      static_cast<std::size_t>(ckpt.extractor.feature_dim) !=
          ckpt.params.dims.feat_dim)
    throw Error("checkpoint model dimensions do not match its extractor");

  ToyExtractor extractor(ckpt.extractor);
  std::vector<ScoreRow> rows(manifest.size());
  ParallelFor(manifest.size(), threads, [&](std::size_t i) {
    const auto &e = manifest[i];
    LayeredFeatures features;
    if (e.path.extension() == ".lft") {
      features = LoadFeatures(e.path);
    } else {
      Waveform w = ReadWav(e.path, ckpt.extractor.sample_rate_hz);
      features = extractor.Extract(w);
    }
    ForwardOutput out =
        Forward(features, ckpt.params, Mode::kEval, 0.0, nullptr);
    rows[i] = {e.id, out.score, e.label};
  });
  return rows;
}

ScoreSet ToScoreSet(const std::vector<ScoreRow> &rows) {
  ScoreSet set;
  for (const auto &r : rows) {
    if (IsFakeLabel(r.label))
      set.spoof_scores.push_back(r.score);
    else
      set.genuine_scores.push_back(r.score);
  }
  return set;
}

void WriteScores(const std::filesystem::path &path,
                 const std::vector<ScoreRow> &rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write scores: " + path.string());
  for (const auto &r : rows)
    out << r.id << "\t" << FormatDouble(r.score) << "\t" << LabelName(r.label)
        << "\n";
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<ScoreRow> ReadScores(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scores: " + path.string());
  std::vector<ScoreRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    ScoreRow row;
    std::string score_str, label_str;
    if (!std::getline(ss, row.id, '\t') || !std::getline(ss, score_str, '\t') ||
        !std::getline(ss, label_str))
      throw Error("bad score line " + std::to_string(line_no) + " in " +
                   path.string());
    try {
      row.score = std::stod(score_str);
    } catch (const std::exception &) {
      throw Error("bad score value on line " + std::to_string(line_no) +
                   " in " + path.string());
    }
    row.label = LabelFromName(label_str);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("score file is empty: " + path.string());
  return rows;
}

std::vector<std::pair<std::size_t, double>> LayerWeightReport(
    const Checkpoint &ckpt) {
  std::vector<double> alpha = Softmax(ckpt.params.layer_logits);
  std::vector<std::pair<std::size_t, double>> rows;
  rows.reserve(alpha.size());
  for (std::size_t l = 0; l < alpha.size(); ++l) rows.emplace_back(l, alpha[l]);
  return rows;
}

void WriteLayerWeightsCsv(
    const std::filesystem::path &path,
    const std::vector<std::pair<std::size_t, double>> &rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write layer weights: " + path.string());
  out << "layer_index,alpha\n";
  for (const auto &[l, a] : rows) out << l << "," << FormatDouble(a) << "\n";
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace spoofkit
