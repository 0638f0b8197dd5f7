// tests/test_checkpoint.cc

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

#include "spoofkit/checkpoint.h"

#include <doctest.h>

#include <fstream>

#include "spoofkit/error.h"
#include "test_util.h"

using namespace spoofkit;

namespace {

Checkpoint MakeCheckpoint(std::uint64_t seed) {
  Checkpoint ckpt;
  Rng rng(seed);
  ckpt.params = ModelParams::Init(ModelDims{3, 8, 6, 5, 4}, &rng);
  ckpt.loss = LossConfig{18.0, 0.85, 0.15};
  ckpt.extractor.num_layers = 2;
  ckpt.extractor.feature_dim = 8;
  ckpt.extractor.init_seed = 99;
  ckpt.epoch = 12;
  ckpt.dev_loss = 0.125;
  ckpt.train_loss = 0.0625;
  return ckpt;
}

std::vector<double> Flatten(const ModelParams &p) {
  std::vector<double> out;
  p.ForEachTensor([&out](std::string_view, std::span<const double> t) {
    out.insert(out.end(), t.begin(), t.end());
  });
  return out;
}

}  // namespace

TEST_CASE("checkpoints roundtrip bit-exactly") {
  auto dir = testutil::ScratchDir("ckpt_roundtrip");
  Checkpoint ckpt = MakeCheckpoint(3);
  SaveCheckpoint(dir / "m.ckpt", ckpt);
  Checkpoint back = LoadCheckpoint(dir / "m.ckpt");

  CHECK(back.params.dims == ckpt.params.dims);
  std::vector<double> a = Flatten(ckpt.params);
  std::vector<double> b = Flatten(back.params);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(back.loss.scale == ckpt.loss.scale);
  CHECK(back.loss.margin_genuine == ckpt.loss.margin_genuine);
  CHECK(back.loss.margin_spoof == ckpt.loss.margin_spoof);
  CHECK(back.extractor.num_layers == 2);
  CHECK(back.extractor.feature_dim == 8);
  CHECK(back.extractor.init_seed == 99);
  CHECK(back.epoch == 12);
  CHECK(back.dev_loss == 0.125);
  CHECK(back.train_loss == 0.0625);

  // Writing the same checkpoint twice is byte-identical.
  SaveCheckpoint(dir / "m2.ckpt", ckpt);
  CHECK(testutil::FilesEqual(dir / "m.ckpt", dir / "m2.ckpt"));
}

TEST_CASE("corrupt checkpoints are rejected") {
  auto dir = testutil::ScratchDir("ckpt_errors");
  {
    std::ofstream bad(dir / "bad.ckpt", std::ios::binary);
    bad << "NOTACKPT and more";
  }
  CHECK_THROWS_WITH_AS(LoadCheckpoint(dir / "bad.ckpt"),
                       doctest::Contains("not a checkpoint"), Error);

  Checkpoint ckpt = MakeCheckpoint(4);
  SaveCheckpoint(dir / "t.ckpt", ckpt);
  auto size = std::filesystem::file_size(dir / "t.ckpt");
  std::filesystem::resize_file(dir / "t.ckpt", size - 9);
  CHECK_THROWS_WITH_AS(LoadCheckpoint(dir / "t.ckpt"),
                       doctest::Contains("truncated"), Error);

  CHECK_THROWS_AS(LoadCheckpoint(dir / "missing.ckpt"), Error);
}
