// src/features.cc

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

#include "spoofkit/features.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

#include "spoofkit/error.h"

namespace spoofkit {

namespace {

constexpr char kMagic[4] = {'L', 'F', 'T', '1'};

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
    throw Error("truncated feature file header: " + path.string());
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint32_t FloatBits(float f) {
  std::uint32_t u;
  std::memcpy(&u, &f, 4);
  return u;
}

float BitsFloat(std::uint32_t u) {
  float f;
  std::memcpy(&f, &u, 4);
  return f;
}

}  // namespace

std::uint64_t FeaturePayloadBytes(std::uint64_t layers_p1, std::uint64_t frames,
                                  std::uint64_t dim) {
  // Overflow-checked product; dimensions come from untrusted file headers.
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (layers_p1 != 0 && frames > kMax / layers_p1)
    throw Error("feature dimensions overflow");
  std::uint64_t lt = layers_p1 * frames;
  if (lt != 0 && dim > kMax / lt) throw Error("feature dimensions overflow");
  std::uint64_t n = lt * dim;
  if (n > kMax / 4) throw Error("feature dimensions overflow");
  return n * 4;
}

void SaveFeatures(const std::filesystem::path &path, const LayeredFeatures &f) {
  if (f.data.size() != f.num_layers_p1 * f.num_frames * f.feat_dim)
    throw Error("feature tensor size does not match its dimensions");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out.write(kMagic, 4);
  PutU32(out, static_cast<std::uint32_t>(f.num_layers_p1));
  PutU32(out, static_cast<std::uint32_t>(f.num_frames));
  PutU32(out, static_cast<std::uint32_t>(f.feat_dim));
  for (float v : f.data) PutU32(out, FloatBits(v));
  if (!out) throw Error("write failed: " + path.string());
}

LayeredFeatures LoadFeatures(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open feature file: " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw Error("not a feature file: " + path.string());
  std::uint64_t layers_p1 = GetU32(in, path);
  std::uint64_t frames = GetU32(in, path);
  std::uint64_t dim = GetU32(in, path);
  std::uint64_t payload = FeaturePayloadBytes(layers_p1, frames, dim);
  if (payload / 4 > std::numeric_limits<std::size_t>::max() / sizeof(float))
    throw Error("feature dimensions overflow");

  LayeredFeatures f;
  f.num_layers_p1 = static_cast<std::size_t>(layers_p1);
  f.num_frames = static_cast<std::size_t>(frames);
  f.feat_dim = static_cast<std::size_t>(dim);
  f.data.resize(static_cast<std::size_t>(payload / 4));
  std::vector<unsigned char> raw(static_cast<std::size_t>(payload));
  if (!in.read(reinterpret_cast<char *>(raw.data()),
               static_cast<std::streamsize>(raw.size())))
    throw Error("truncated feature payload: " + path.string());
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    std::uint32_t u = static_cast<std::uint32_t>(raw[4 * i]) |
                      (static_cast<std::uint32_t>(raw[4 * i + 1]) << 8) |
                      (static_cast<std::uint32_t>(raw[4 * i + 2]) << 16) |
                      (static_cast<std::uint32_t>(raw[4 * i + 3]) << 24);
    f.data[i] = BitsFloat(u);
  }
  return f;
}

}  // namespace spoofkit
