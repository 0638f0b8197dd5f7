// src/checkpoint.cc

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

#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "spoofkit/error.h"

namespace spoofkit {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'S', 'P', 'K', '1'};
constexpr std::uint32_t kVersion = 1;

void PutU32(std::ofstream &out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char *>(b), 4);
}

std::uint32_t GetU32(std::ifstream &in, const std::filesystem::path &path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char *>(b), 4))
    throw Error("truncated checkpoint: " + path.string());
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void PutF64(std::ofstream &out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char *>(b), 8);
}

double GetF64(std::ifstream &in, const std::filesystem::path &path) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char *>(b), 8))
    throw Error("truncated checkpoint tensor data: " + path.string());
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

void SaveCheckpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
  json tensor_order = json::array();
  ckpt.params.ForEachTensor(
      [&tensor_order](std::string_view name, std::span<const double> t) {
        tensor_order.push_back(
            json{{"name", std::string(name)}, {"size", t.size()}});
      });
  const ModelDims &d = ckpt.params.dims;
  json header{
      {"dims",
       {{"num_layers_p1", d.num_layers_p1},
        {"feat_dim", d.feat_dim},
        {"hidden_dim", d.hidden_dim},
        {"attn_dim", d.attn_dim},
        {"embed_dim", d.embed_dim}}},
      {"loss",
       {{"scale", ckpt.loss.scale},
        {"margin_genuine", ckpt.loss.margin_genuine},
        {"margin_spoof", ckpt.loss.margin_spoof}}},
      {"extractor",
       {{"num_layers", ckpt.extractor.num_layers},
        {"feature_dim", ckpt.extractor.feature_dim},
        {"init_seed", ckpt.extractor.init_seed},
        {"sample_rate_hz", ckpt.extractor.sample_rate_hz}}},
      {"training",
       {{"epoch", ckpt.epoch},
        {"dev_loss", ckpt.dev_loss},
        {"train_loss", ckpt.train_loss}}},
      {"tensor_order", tensor_order}};
  std::string header_str = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out.write(kMagic, 4);
  PutU32(out, kVersion);
  PutU32(out, static_cast<std::uint32_t>(header_str.size()));
  out.write(header_str.data(), static_cast<std::streamsize>(header_str.size()));
  ckpt.params.ForEachTensor(
      [&out](std::string_view, std::span<const double> t) {
        for (double v : t) PutF64(out, v);
      });
  if (!out) throw Error("write failed: " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open checkpoint: " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw Error("not a checkpoint file: " + path.string());
  std::uint32_t version = GetU32(in, path);
  if (version != kVersion)
    throw Error("unsupported checkpoint version " + std::to_string(version));
  std::uint32_t header_len = GetU32(in, path);
  std::string header_str(header_len, '\0');
  if (!in.read(header_str.data(), header_len))
    throw Error("truncated checkpoint header: " + path.string());

  json header;
  try {
    header = json::parse(header_str);
  } catch (const json::exception &e) {
    throw Error("corrupt checkpoint header in " + path.string() + ": " +
                 e.what());
  }

  Checkpoint ckpt;
  try {
    const auto &jd = header.at("dims");
    ModelDims dims;
    dims.num_layers_p1 = jd.at("num_layers_p1").get<std::size_t>();
    dims.feat_dim = jd.at("feat_dim").get<std::size_t>();
    dims.hidden_dim = jd.at("hidden_dim").get<std::size_t>();
    dims.attn_dim = jd.at("attn_dim").get<std::size_t>();
    dims.embed_dim = jd.at("embed_dim").get<std::size_t>();
    Rng dummy(0);
    ckpt.params = ModelParams::Init(dims, &dummy);
    const auto &jl = header.at("loss");
    ckpt.loss.scale = jl.at("scale").get<double>();
    ckpt.loss.margin_genuine = jl.at("margin_genuine").get<double>();
    ckpt.loss.margin_spoof = jl.at("margin_spoof").get<double>();
    const auto &je = header.at("extractor");
    ckpt.extractor.num_layers = je.at("num_layers").get<int>();
    ckpt.extractor.feature_dim = je.at("feature_dim").get<int>();
    ckpt.extractor.init_seed = je.at("init_seed").get<std::uint64_t>();
    ckpt.extractor.sample_rate_hz = je.at("sample_rate_hz").get<int>();
    const auto &jt = header.at("training");
    ckpt.epoch = jt.at("epoch").get<int>();
    ckpt.dev_loss = jt.at("dev_loss").get<double>();
    ckpt.train_loss = jt.at("train_loss").get<double>();
  } catch (const json::exception &e) {
    throw Error("corrupt checkpoint header in " + path.string() + ": " +
                 e.what());
  }

  ckpt.params.ForEachTensor([&in, &path](std::string_view,
                                         std::span<double> t) {
    for (double &v : t) v = GetF64(in, path);
  });
  return ckpt;
}

}  // namespace spoofkit
