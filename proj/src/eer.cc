// src/eer.cc

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

#include "spoofkit/eer.h"

#include <algorithm>
#include <cmath>

#include "spoofkit/error.h"

namespace spoofkit {

namespace {

struct Sweep {
  std::vector<double> thresholds;
  std::vector<double> far;
  std::vector<double> frr;
};

Sweep SweepThresholds(const ScoreSet &scores) {
  if (scores.genuine_scores.empty()) throw Error("no genuine scores");
  if (scores.spoof_scores.empty()) throw Error("no spoof scores");
  for (double s : scores.genuine_scores)
    if (!std::isfinite(s)) throw Error("non-finite genuine score");
  for (double s : scores.spoof_scores)
    if (!std::isfinite(s)) throw Error("non-finite spoof score");

  std::vector<double> genuine = scores.genuine_scores;
  std::vector<double> spoof = scores.spoof_scores;
  std::sort(genuine.begin(), genuine.end());
  std::sort(spoof.begin(), spoof.end());

  Sweep sweep;
  sweep.thresholds.reserve(genuine.size() + spoof.size() + 1);
  sweep.thresholds.insert(sweep.thresholds.end(), genuine.begin(), genuine.end());
  sweep.thresholds.insert(sweep.thresholds.end(), spoof.begin(), spoof.end());
  std::sort(sweep.thresholds.begin(), sweep.thresholds.end());
  sweep.thresholds.erase(
      std::unique(sweep.thresholds.begin(), sweep.thresholds.end()),
      sweep.thresholds.end());
  // High sentinel: everything rejected.
  sweep.thresholds.push_back(sweep.thresholds.back() + 1.0);

  double n = static_cast<double>(genuine.size());
  double m = static_cast<double>(spoof.size());
  sweep.far.resize(sweep.thresholds.size());
  sweep.frr.resize(sweep.thresholds.size());
  for (std::size_t i = 0; i < sweep.thresholds.size(); ++i) {
    double theta = sweep.thresholds[i];
    auto spoof_below =
        std::lower_bound(spoof.begin(), spoof.end(), theta) - spoof.begin();
    auto genuine_below =
        std::lower_bound(genuine.begin(), genuine.end(), theta) -
        genuine.begin();
    sweep.far[i] = (m - static_cast<double>(spoof_below)) / m;
    sweep.frr[i] = static_cast<double>(genuine_below) / n;
  }
  return sweep;
}

}  // namespace

std::vector<DetPoint> DetPoints(const ScoreSet &scores) {
  Sweep sweep = SweepThresholds(scores);
  std::vector<DetPoint> points;
  points.reserve(sweep.thresholds.size());
  for (std::size_t i = 0; i < sweep.thresholds.size(); ++i) {
    if (!points.empty() && points.back().far == sweep.far[i] &&
        points.back().frr == sweep.frr[i])
      continue;
    points.push_back({sweep.thresholds[i], sweep.far[i], sweep.frr[i]});
  }
  return points;
}

EerResult ComputeEer(const ScoreSet &scores) {
  Sweep sweep = SweepThresholds(scores);
  std::size_t count = sweep.thresholds.size();
  for (std::size_t i = 0; i < count; ++i) {
    double diff = sweep.far[i] - sweep.frr[i];
    if (diff == 0.0) return {sweep.far[i], sweep.thresholds[i]};
    if (diff < 0.0) {
      // First sign change; interpolate inside the previous interval. The
      // sweep starts at FAR=1, FRR=0, so i > 0 here.
      double prev_diff = sweep.far[i - 1] - sweep.frr[i - 1];
      double t = prev_diff / (prev_diff - diff);
      double eer =
          sweep.far[i - 1] + t * (sweep.far[i] - sweep.far[i - 1]);
      double theta = sweep.thresholds[i - 1] +
                     t * (sweep.thresholds[i] - sweep.thresholds[i - 1]);
      return {eer, theta};
    }
  }
  // Unreachable: the sentinel point has FAR=0, FRR=1.
  throw Error("no FAR/FRR crossing found");
}

}  // namespace spoofkit
