// spoofkit/eer.h

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

#ifndef SPOOFKIT_EER_H_
#define SPOOFKIT_EER_H_

#include <vector>

namespace spoofkit {

/// Labeled scores for metric computation. Higher scores mean more genuine.
/// Both classes must be non-empty and all values finite.
struct ScoreSet {
  std::vector<double> genuine_scores;
  std::vector<double> spoof_scores;
};

/// One operating point of the detection tradeoff. Convention: a spoof is
/// falsely accepted when its score >= threshold; a genuine utterance is
/// falsely rejected when its score < threshold.
struct DetPoint {
  double threshold = 0.0;
  double far = 0.0;  // false acceptance rate, non-increasing in threshold
  double frr = 0.0;  // false rejection rate, non-decreasing in threshold
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

/// Sweeps every distinct score as a threshold (plus a high sentinel) and
/// returns the staircase of distinct operating points, from (1, 0) to (0, 1).
/// At most n + m + 1 points.
std::vector<DetPoint> DetPoints(const ScoreSet &scores);

/// Equal error rate: the crossing of FAR and FRR over the threshold sweep,
/// linearly interpolated between the two adjacent operating points where
/// FAR - FRR changes sign. Ties break toward the lower threshold.
EerResult ComputeEer(const ScoreSet &scores);

}  // namespace spoofkit

#endif  // SPOOFKIT_EER_H_
