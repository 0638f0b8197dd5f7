// spoofkit/rng.h

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

#ifndef SPOOFKIT_RNG_H_
#define SPOOFKIT_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace spoofkit {

/// Deterministic 64-bit generator (SplitMix64) with hand-rolled
/// distributions. The standard <random> distributions are
/// implementation-defined, which would break byte-identical replays across
/// toolchains; everything that draws randomness in this project goes through
/// this class.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t NextU64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t Below(std::uint64_t n) {
    // Fixed-point multiply keeps the draw deterministic and nearly unbiased.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(NextU64()) * n) >> 64);
  }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    Below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  /// Standard normal via Box-Muller with a cached spare.
  double Gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - Uniform();  // (0, 1]
    double u2 = Uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void Shuffle(std::vector<T> *v) {
    for (std::size_t i = v->size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// FNV-1a over arbitrary bytes; used to derive per-(epoch, utterance) seeds
/// and to checksum frozen parameter blocks.
inline std::uint64_t Fnv1a(const void *data, std::size_t n,
                           std::uint64_t h = 0xCBF29CE484222325ULL) {
  const auto *p = static_cast<const unsigned char *>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t DeriveSeed(std::uint64_t base, std::string_view tag) {
  std::uint64_t h = Fnv1a(&base, sizeof(base));
  return Fnv1a(tag.data(), tag.size(), h);
}

inline std::uint64_t DeriveSeed(std::uint64_t base, std::string_view tag,
                                std::uint64_t n) {
  std::uint64_t h = DeriveSeed(base, tag);
  return Fnv1a(&n, sizeof(n), h);
}

inline std::uint64_t DeriveSeed(std::uint64_t base, std::string_view tag,
                                std::uint64_t n, std::string_view id) {
  std::uint64_t h = DeriveSeed(base, tag, n);
  return Fnv1a(id.data(), id.size(), h);
}

}  // namespace spoofkit

#endif  // SPOOFKIT_RNG_H_
