// tools/spoofkit_main.cc

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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spoofkit/checkpoint.h"
#include "spoofkit/config.h"
#include "spoofkit/datagen.h"
#include "spoofkit/error.h"
#include "spoofkit/parallel.h"
#include "spoofkit/scoring.h"
#include "spoofkit/trainer.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spoofkit;

struct CommonOpts {
  std::optional<fs::path> config;
  std::vector<std::string> overrides;
  std::optional<std::int64_t> seed;
  int threads = 0;
};

void AddCommonOpts(CLI::App *cmd, CommonOpts *opts) {
  cmd->add_option("--config", opts->config, "JSON run configuration");
  cmd->add_option("--set", opts->overrides,
                  "Override a config value, section.key=value (repeatable)");
  cmd->add_option("--seed", opts->seed,
                  "Override data.seed and train.seed in one flag");
  cmd->add_option("--threads", opts->threads,
                  "Worker cap (default: SPOOFKIT_THREADS or all cores)");
}

RunConfig LoadConfigFor(const CommonOpts &opts) {
  std::vector<std::string> overrides = opts.overrides;
  if (opts.seed) {
    overrides.push_back("data.seed=" + std::to_string(*opts.seed));
    overrides.push_back("train.seed=" + std::to_string(*opts.seed));
  }
  return LoadRunConfig(opts.config, overrides);
}

json FirDecisionJson(const FirFilter &f) {
  return json{{"band", BandClassName(f.band_class)},
              {"cutoff_norm", f.cutoff_norm},
              {"num_taps", f.taps.size()}};
}

json SpliceDecisionJson(const SpliceRecord &rec) {
  return json{{"host_id", rec.host_id},
              {"donor_id", rec.donor_id},
              {"start_sample", rec.start_sample},
              {"length_samples", rec.length_samples},
              {"donor_offset", rec.donor_offset}};
}

int RunDatagen(const CommonOpts &opts, const fs::path &out) {
  RunConfig cfg = LoadConfigFor(opts);
  CorpusPaths paths = BuildCorpus(cfg.data, out, opts.threads);
  EchoConfig(cfg, out);
  std::cout << "wrote " << paths.train_manifest << ", " << paths.dev_manifest
            << ", " << paths.eval_manifest << "\n";
  return 0;
}

int RunAugment(const CommonOpts &opts, const fs::path &manifest_path,
               const fs::path &out, int epoch) {
  RunConfig cfg = LoadConfigFor(opts);
  AugmentConfig aug = cfg.Augment();
  Manifest manifest = LoadManifest(manifest_path);
  std::vector<std::size_t> lengths = ManifestLengths(manifest, aug.sample_rate_hz);
  std::uint64_t epoch_seed =
      DeriveSeed(cfg.train.seed, "plan", static_cast<std::uint64_t>(epoch));
  EpochAugmentPlan plan = BuildEpochPlan(manifest, lengths, epoch_seed, aug);

  fs::create_directories(out / "wav");
  std::vector<Waveform> waves(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i)
    waves[i] = ReadWav(manifest[i].path, aug.sample_rate_hz);
  std::unordered_map<std::string, std::size_t> index_by_id;
  for (std::size_t i = 0; i < manifest.size(); ++i)
    index_by_id.emplace(manifest[i].id, i);

  Manifest augmented = manifest;
  json plan_json{{"epoch_seed", epoch_seed}, {"entries", json::array()}};
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const AugmentDecision &dec = plan.decisions[i];
    Waveform w = ApplyDecision(
        waves[i], dec, aug, [&](const std::string &donor_id) -> const Waveform & {
          return waves.at(index_by_id.at(donor_id));
        });
    // Filter overshoot may poke past full scale; clip before quantizing.
    for (double &x : w.samples) x = std::clamp(x, -1.0, 1.0);
    fs::path file = out / "wav" / (manifest[i].id + ".wav");
    WriteWav(file, w);
    augmented[i].path = file;
    augmented[i].num_samples = w.samples.size();
    if (dec.splice) {
      augmented[i].label = Label::kPartial;
      augmented[i].splice = dec.splice;
    }
    plan_json["entries"].push_back(
        json{{"id", manifest[i].id},
             {"fir", dec.fir ? FirDecisionJson(*dec.fir) : json(nullptr)},
             {"splice",
              dec.splice ? SpliceDecisionJson(*dec.splice) : json(nullptr)}});
  }
  SaveManifest(out / "manifest.json", augmented);
  std::ofstream plan_out(out / "plan.json", std::ios::trunc);
  if (!plan_out) throw Error("cannot write plan.json in " + out.string());
  plan_out << plan_json.dump(2) << "\n";
  EchoConfig(cfg, out);
  std::cout << "augmented " << manifest.size() << " utterances ("
            << plan.NumFirs() << " filtered, " << plan.NumSplices()
            << " spliced)\n";
  return 0;
}

int RunExtract(const CommonOpts &opts, const fs::path &manifest_path,
               const fs::path &out) {
  RunConfig cfg = LoadConfigFor(opts);
  ToyExtractor extractor(cfg.extractor);
  Manifest manifest = LoadManifest(manifest_path);
  fs::create_directories(out / "lft");
  Manifest feature_manifest = manifest;
  ParallelFor(manifest.size(), opts.threads, [&](std::size_t i) {
    Waveform w = ReadWav(manifest[i].path, cfg.data.sample_rate_hz);
    LayeredFeatures f = extractor.Extract(w);
    fs::path file = out / "lft" / (manifest[i].id + ".lft");
    SaveFeatures(file, f);
    feature_manifest[i].path = file;
    feature_manifest[i].num_samples = w.samples.size();
  });
  SaveManifest(out / "features.json", feature_manifest);
  EchoConfig(cfg, out);
  std::cout << "extracted features for " << manifest.size() << " utterances\n";
  return 0;
}

int RunTrain(const CommonOpts &opts, const fs::path &train_path,
             const fs::path &dev_path, const fs::path &out) {
  RunConfig cfg = LoadConfigFor(opts);
  ToyExtractor extractor(cfg.extractor);
  Manifest train_set = LoadManifest(train_path);
  Manifest dev_set = LoadManifest(dev_path);

  Rng init_rng(DeriveSeed(cfg.train.seed, "init"));
  ModelParams initial = ModelParams::Init(cfg.Dims(), &init_rng);
  TrainResult result =
      TrainLoop(train_set, dev_set, extractor, initial, cfg.loss,
                cfg.Augment(), cfg.Train(opts.threads));

  fs::create_directories(out);
  Checkpoint ckpt;
  ckpt.params = result.best_params;
  ckpt.loss = cfg.loss;
  ckpt.extractor = cfg.extractor;
  ckpt.epoch = result.best_epoch;
  ckpt.dev_loss = result.best_dev_loss;
  ckpt.train_loss = result.best_train_loss;
  SaveCheckpoint(out / "best.ckpt", ckpt);
  WriteHistoryCsv(out / "history.csv", result.history);
  EchoConfig(cfg, out);
  std::cout << "trained " << result.history.size() << " epochs ("
            << (result.stopped_early ? "early stop" : "max epochs")
            << "), best dev loss " << result.best_dev_loss << " at epoch "
            << result.best_epoch << "\n";
  return 0;
}

int RunScore(const CommonOpts &opts, const fs::path &ckpt_path,
             const fs::path &manifest_path, const fs::path &out) {
  RunConfig cfg = LoadConfigFor(opts);
  Checkpoint ckpt = LoadCheckpoint(ckpt_path);
  Manifest manifest = LoadManifest(manifest_path);
  std::vector<ScoreRow> rows = ScoreDataset(ckpt, manifest, opts.threads);
  fs::create_directories(out);
  WriteScores(out / "scores.tsv", rows);
  EchoConfig(cfg, out);
  std::cout << "scored " << rows.size() << " utterances\n";
  return 0;
}

int RunEer(const CommonOpts &opts, const fs::path &scores_path,
           const std::optional<fs::path> &out) {
  RunConfig cfg = LoadConfigFor(opts);
  std::vector<ScoreRow> rows = ReadScores(scores_path);
  ScoreSet set = ToScoreSet(rows);
  EerResult res = ComputeEer(set);
  json report{{"eer", res.eer},
              {"threshold", res.threshold},
              {"n_genuine", set.genuine_scores.size()},
              {"n_spoof", set.spoof_scores.size()}};
  std::cout << report.dump(2) << "\n";
  if (out) {
    fs::create_directories(*out);
    std::ofstream f(*out / "eer.json", std::ios::trunc);
    if (!f) throw Error("cannot write eer.json in " + out->string());
    f << report.dump(2) << "\n";
    if (cfg.eval.write_det_points) {
      std::ofstream det(*out / "det.csv", std::ios::trunc);
      if (!det) throw Error("cannot write det.csv in " + out->string());
      det << "threshold,far,frr\n";
      for (const DetPoint &p : DetPoints(set))
        det << p.threshold << "," << p.far << "," << p.frr << "\n";
    }
    EchoConfig(cfg, *out);
  }
  return 0;
}

int RunWeights(const CommonOpts &opts, const fs::path &ckpt_path,
               const std::optional<fs::path> &out) {
  RunConfig cfg = LoadConfigFor(opts);
  Checkpoint ckpt = LoadCheckpoint(ckpt_path);
  auto rows = LayerWeightReport(ckpt);
  if (out) {
    fs::create_directories(*out);
    WriteLayerWeightsCsv(*out / "layer_weights.csv", rows);
    EchoConfig(cfg, *out);
  } else {
    std::cout << "layer_index,alpha\n";
    for (const auto &[l, a] : rows) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", a);
      std::cout << l << "," << buf << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"spoofkit: audio anti-spoofing training and evaluation toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  fs::path out_dir;
  fs::path manifest_path;
  fs::path train_path, dev_path;
  fs::path ckpt_path;
  fs::path scores_path;
  std::optional<fs::path> opt_out;
  int epoch = 0;

  std::function<int()> action;

  auto *datagen = app.add_subcommand("datagen", "Generate the synthetic corpus");
  AddCommonOpts(datagen, &opts);
  datagen->add_option("--out", out_dir, "Output directory")->required();
  datagen->callback([&]() { action = [&]() { return RunDatagen(opts, out_dir); }; });

  auto *augment = app.add_subcommand(
      "augment", "Materialize one epoch of augmentation for inspection");
  AddCommonOpts(augment, &opts);
  augment->add_option("--manifest", manifest_path, "Input manifest")->required();
  augment->add_option("--out", out_dir, "Output directory")->required();
  augment->add_option("--epoch", epoch, "Epoch index used for the plan seed");
  augment->callback([&]() {
    action = [&]() { return RunAugment(opts, manifest_path, out_dir, epoch); };
  });

  auto *extract =
      app.add_subcommand("extract", "Extract features to binary feature files");
  AddCommonOpts(extract, &opts);
  extract->add_option("--manifest", manifest_path, "Input manifest")->required();
  extract->add_option("--out", out_dir, "Output directory")->required();
  extract->callback([&]() {
    action = [&]() { return RunExtract(opts, manifest_path, out_dir); };
  });

  auto *train = app.add_subcommand("train", "Train the classification head");
  AddCommonOpts(train, &opts);
  train->add_option("--train", train_path, "Training manifest")->required();
  train->add_option("--dev", dev_path, "Dev manifest")->required();
  train->add_option("--out", out_dir, "Output directory")->required();
  train->callback([&]() {
    action = [&]() { return RunTrain(opts, train_path, dev_path, out_dir); };
  });

  auto *score = app.add_subcommand("score", "Score a manifest with a checkpoint");
  AddCommonOpts(score, &opts);
  score->add_option("--checkpoint", ckpt_path, "Checkpoint file")->required();
  score->add_option("--manifest", manifest_path, "Manifest to score")->required();
  score->add_option("--out", out_dir, "Output directory")->required();
  score->callback([&]() {
    action = [&]() { return RunScore(opts, ckpt_path, manifest_path, out_dir); };
  });

  auto *eer = app.add_subcommand("eer", "Equal error rate from a score file");
  AddCommonOpts(eer, &opts);
  eer->add_option("--scores", scores_path, "Score file (id\\tscore\\tlabel)")
      ->required();
  eer->add_option("--out", opt_out, "Optional output directory");
  eer->callback(
      [&]() { action = [&]() { return RunEer(opts, scores_path, opt_out); }; });

  auto *weights =
      app.add_subcommand("weights", "Layer weights of a checkpoint as CSV");
  AddCommonOpts(weights, &opts);
  weights->add_option("--checkpoint", ckpt_path, "Checkpoint file")->required();
  weights->add_option("--out", opt_out, "Optional output directory");
  weights->callback(
      [&]() { action = [&]() { return RunWeights(opts, ckpt_path, opt_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 1;
  }

  try {
    return action();
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
