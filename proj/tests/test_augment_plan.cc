// tests/test_augment_plan.cc

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

#include "spoofkit/augment_plan.h"

#include <doctest.h>

#include "spoofkit/error.h"

using namespace spoofkit;

namespace {

Manifest SyntheticManifest(int n_genuine, int n_spoof) {
  Manifest m;
  for (int i = 0; i < n_genuine; ++i) {
    ManifestEntry e;
    e.id = "g" + std::to_string(i);
    e.path = "g" + std::to_string(i) + ".wav";
    e.label = Label::kGenuine;
    e.num_samples = 16000 + 160 * i;
    m.push_back(e);
  }
  for (int i = 0; i < n_spoof; ++i) {
    ManifestEntry e;
    e.id = "s" + std::to_string(i);
    e.path = "s" + std::to_string(i) + ".wav";
    e.label = Label::kSpoof;
    e.num_samples = 16000 + 80 * i;
    m.push_back(e);
  }
  return m;
}

}  // namespace

TEST_CASE("plan splices exactly 20% of genuine hosts") {
  Manifest m = SyntheticManifest(100, 100);
  auto lengths = ManifestLengths(m, 16000);
  AugmentConfig cfg;
  for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    EpochAugmentPlan plan = BuildEpochPlan(m, lengths, seed, cfg);
    CHECK(plan.NumSplices() == 20);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (plan.decisions[i].splice) {
        CHECK(m[i].label == Label::kGenuine);
        CHECK(plan.decisions[i].splice->host_id == m[i].id);
        CHECK(plan.decisions[i].splice->donor_id != m[i].id);
      }
    }
  }
}

TEST_CASE("fir probability boundaries") {
  Manifest m = SyntheticManifest(50, 50);
  auto lengths = ManifestLengths(m, 16000);
  AugmentConfig cfg;
  cfg.fir_prob = 0.0;
  EpochAugmentPlan none = BuildEpochPlan(m, lengths, 5, cfg);
  CHECK(none.NumFirs() == 0);

  cfg.fir_prob = 1.0;
  EpochAugmentPlan all_a = BuildEpochPlan(m, lengths, 5, cfg);
  EpochAugmentPlan all_b = BuildEpochPlan(m, lengths, 5, cfg);
  CHECK(all_a.NumFirs() == m.size());
  REQUIRE(all_a.decisions.size() == all_b.decisions.size());
  for (std::size_t i = 0; i < all_a.decisions.size(); ++i) {
    REQUIRE(all_a.decisions[i].fir.has_value() ==
            all_b.decisions[i].fir.has_value());
    if (all_a.decisions[i].fir) {
      CHECK(all_a.decisions[i].fir->cutoff_norm ==
            all_b.decisions[i].fir->cutoff_norm);
      CHECK(all_a.decisions[i].fir->taps == all_b.decisions[i].fir->taps);
    }
    REQUIRE(all_a.decisions[i].splice.has_value() ==
            all_b.decisions[i].splice.has_value());
    if (all_a.decisions[i].splice) {
      CHECK(all_a.decisions[i].splice->donor_id ==
            all_b.decisions[i].splice->donor_id);
      CHECK(all_a.decisions[i].splice->start_sample ==
            all_b.decisions[i].splice->start_sample);
      CHECK(all_a.decisions[i].splice->length_samples ==
            all_b.decisions[i].splice->length_samples);
      CHECK(all_a.decisions[i].splice->donor_offset ==
            all_b.decisions[i].splice->donor_offset);
    }
  }
}

TEST_CASE("different seeds change the plan") {
  Manifest m = SyntheticManifest(40, 40);
  auto lengths = ManifestLengths(m, 16000);
  AugmentConfig cfg;
  EpochAugmentPlan a = BuildEpochPlan(m, lengths, 1, cfg);
  EpochAugmentPlan b = BuildEpochPlan(m, lengths, 2, cfg);
  bool any_difference = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (a.decisions[i].fir.has_value() != b.decisions[i].fir.has_value() ||
        a.decisions[i].splice.has_value() != b.decisions[i].splice.has_value())
      any_difference = true;
  }
  CHECK(any_difference);
}

TEST_CASE("empty manifest is rejected") {
  Manifest empty;
  std::vector<std::size_t> lengths;
  AugmentConfig cfg;
  CHECK_THROWS_AS(BuildEpochPlan(empty, lengths, 1, cfg), Error);
}

TEST_CASE("splice geometry in plans fits the recorded lengths") {
  Manifest m = SyntheticManifest(30, 10);
  auto lengths = ManifestLengths(m, 16000);
  AugmentConfig cfg;
  EpochAugmentPlan plan = BuildEpochPlan(m, lengths, 17, cfg);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!plan.decisions[i].splice) continue;
    const SpliceRecord &rec = *plan.decisions[i].splice;
    CHECK(rec.start_sample + rec.length_samples <= lengths[i]);
    CHECK(rec.length_samples < lengths[i]);
  }
}
