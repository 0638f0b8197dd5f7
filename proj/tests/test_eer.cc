// tests/test_eer.cc

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

#include <doctest.h>

#include <cmath>

#include "spoofkit/datagen.h"
#include "spoofkit/error.h"
#include "spoofkit/rng.h"
#include "spoofkit/scoring.h"
#include "test_util.h"

using namespace spoofkit;

namespace {

ScoreSet RandomScoreSet(Rng *rng) {
  ScoreSet s;
  std::size_t n = 1 + rng->Below(50);
  std::size_t m = 1 + rng->Below(50);
  bool discrete = rng->Bernoulli(0.5);  // force ties half the time
  auto draw = [&]() {
    if (discrete) return static_cast<double>(rng->UniformInt(-5, 5)) / 5.0;
    return rng->Uniform(-1.0, 1.0);
  };
  for (std::size_t i = 0; i < n; ++i) s.genuine_scores.push_back(draw());
  for (std::size_t i = 0; i < m; ++i) s.spoof_scores.push_back(draw());
  return s;
}

}  // namespace

TEST_CASE("perfectly separated scores give zero error") {
  ScoreSet s{{0.9, 0.8}, {0.2, 0.1}};
  EerResult r = ComputeEer(s);
  CHECK(r.eer == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("indistinguishable scores give one half") {
  ScoreSet s{{0.5, 0.5}, {0.5, 0.5}};
  EerResult r = ComputeEer(s);
  CHECK(r.eer == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("three against three crossing at one third") {
  ScoreSet s{{0.9, 0.8, 0.4}, {0.5, 0.3, 0.1}};
  EerResult r = ComputeEer(s);
  CHECK(r.eer == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  testutil::BruteEer oracle =
      testutil::BruteForceEer(s.genuine_scores, s.spoof_scores);
  CHECK(r.eer == doctest::Approx(oracle.eer).epsilon(1e-12));
  CHECK(r.threshold == doctest::Approx(oracle.threshold).epsilon(1e-12));
}

TEST_CASE("eer matches the exhaustive sweep on random instances") {
  Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    ScoreSet s = RandomScoreSet(&rng);
    EerResult r = ComputeEer(s);
    testutil::BruteEer oracle =
        testutil::BruteForceEer(s.genuine_scores, s.spoof_scores);
    CHECK(std::fabs(r.eer - oracle.eer) <= 1e-12);
    CHECK(std::fabs(r.threshold - oracle.threshold) <= 1e-12);
    CHECK(r.eer >= 0.0);
    CHECK(r.eer <= 1.0);
  }
}

TEST_CASE("eer is invariant under strictly increasing transforms") {
  Rng rng(102);
  for (int trial = 0; trial < 50; ++trial) {
    ScoreSet s = RandomScoreSet(&rng);
    double base = ComputeEer(s).eer;

    ScoreSet affine = s;
    double a = rng.Uniform(0.1, 3.0);
    double b = rng.Uniform(-2.0, 2.0);
    for (double &v : affine.genuine_scores) v = a * v + b;
    for (double &v : affine.spoof_scores) v = a * v + b;
    CHECK(ComputeEer(affine).eer == doctest::Approx(base).epsilon(1e-12));

    ScoreSet squashed = s;
    for (double &v : squashed.genuine_scores) v = std::tanh(v);
    for (double &v : squashed.spoof_scores) v = std::tanh(v);
    CHECK(ComputeEer(squashed).eer == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("swapping classes on negated scores preserves the eer") {
  Rng rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    ScoreSet s = RandomScoreSet(&rng);
    ScoreSet swapped;
    for (double v : s.spoof_scores) swapped.genuine_scores.push_back(-v);
    for (double v : s.genuine_scores) swapped.spoof_scores.push_back(-v);
    CHECK(std::fabs(ComputeEer(swapped).eer - ComputeEer(s).eer) <= 1e-12);
  }
}

TEST_CASE("det staircase runs from (1,0) to (0,1) and stays monotone") {
  Rng rng(104);
  for (int trial = 0; trial < 50; ++trial) {
    ScoreSet s = RandomScoreSet(&rng);
    std::vector<DetPoint> points = DetPoints(s);
    REQUIRE(!points.empty());
    CHECK(points.front().far == 1.0);
    CHECK(points.front().frr == 0.0);
    CHECK(points.back().far == 0.0);
    CHECK(points.back().frr == 1.0);
    CHECK(points.size() <=
          s.genuine_scores.size() + s.spoof_scores.size() + 1);
    for (std::size_t i = 1; i < points.size(); ++i) {
      CHECK(points[i].far <= points[i - 1].far);
      CHECK(points[i].frr >= points[i - 1].frr);
      CHECK(points[i].threshold > points[i - 1].threshold);
    }
  }
}

TEST_CASE("det points match an exhaustive threshold enumeration") {
  Rng rng(105);
  ScoreSet s;
  for (int i = 0; i < 10; ++i) s.genuine_scores.push_back(rng.Uniform(-1, 1));
  for (int i = 0; i < 10; ++i) s.spoof_scores.push_back(rng.Uniform(-1, 1));
  std::vector<DetPoint> points = DetPoints(s);
  for (const DetPoint &p : points) {
    std::size_t fa = 0;
    for (double v : s.spoof_scores) fa += v >= p.threshold ? 1 : 0;
    std::size_t fr = 0;
    for (double v : s.genuine_scores) fr += v < p.threshold ? 1 : 0;
    CHECK(p.far == doctest::Approx(fa / 10.0).epsilon(1e-15));
    CHECK(p.frr == doctest::Approx(fr / 10.0).epsilon(1e-15));
  }
}

TEST_CASE("empty classes are rejected") {
  ScoreSet no_genuine{{}, {0.1}};
  ScoreSet no_spoof{{0.1}, {}};
  CHECK_THROWS_AS(ComputeEer(no_genuine), Error);
  CHECK_THROWS_AS(ComputeEer(no_spoof), Error);
  CHECK_THROWS_AS(DetPoints(no_genuine), Error);
}

TEST_CASE("scoring is identical across worker counts") {
  auto dir = testutil::ScratchDir("scores_threads");
  SynthConfig synth;
  synth.duration_s_min = 0.3;
  synth.duration_s_max = 0.4;
  Manifest manifest;
  for (int i = 0; i < 6; ++i) {
    Rng rng(DeriveSeed(21, "wave", i));
    Waveform w = i % 2 == 0 ? SynthGenuine(&rng, synth, 120.0, 200.0)
                            : SynthSpoof(&rng, synth, 120.0, 200.0);
    ManifestEntry e;
    e.id = "u" + std::to_string(i);
    e.path = dir / (e.id + ".wav");
    e.label = i % 2 == 0 ? Label::kGenuine : Label::kSpoof;
    WriteWav(e.path, w);
    manifest.push_back(e);
  }
  Checkpoint ckpt;
  Rng rng(22);
  ckpt.extractor.num_layers = 2;
  ckpt.extractor.feature_dim = 8;
  ckpt.params = ModelParams::Init(ModelDims{3, 8, 6, 6, 6}, &rng);
  std::vector<ScoreRow> serial = ScoreDataset(ckpt, manifest, 1);
  std::vector<ScoreRow> parallel = ScoreDataset(ckpt, manifest, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].id == manifest[i].id);  // manifest order preserved
    CHECK(serial[i].score == parallel[i].score);
  }
}

TEST_CASE("score files roundtrip including partial labels") {
  auto dir = testutil::ScratchDir("scores_roundtrip");
  std::vector<ScoreRow> rows{{"a", 0.25, Label::kGenuine},
                             {"b", -0.5, Label::kSpoof},
                             {"c", 0.125, Label::kPartial}};
  WriteScores(dir / "s.tsv", rows);
  std::vector<ScoreRow> back = ReadScores(dir / "s.tsv");
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].id == rows[i].id);
    CHECK(back[i].score == rows[i].score);
    CHECK(back[i].label == rows[i].label);
  }
  ScoreSet set = ToScoreSet(back);
  CHECK(set.genuine_scores.size() == 1);
  CHECK(set.spoof_scores.size() == 2);  // partial counts as fake
}
