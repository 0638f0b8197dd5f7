// tests/test_fir.cc

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

#include "spoofkit/fir.h"

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spoofkit/error.h"
#include "test_util.h"

using namespace spoofkit;

namespace {

Waveform Sine(double freq_hz, double rate_hz, std::size_t n,
              double amplitude = 0.5) {
  Waveform w;
  w.sample_rate_hz = static_cast<int>(rate_hz);
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    w.samples[i] =
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * i / rate_hz);
  return w;
}

double Rms(const std::vector<double> &x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace

TEST_CASE("designed filters are symmetric with unit DC gain") {
  for (int taps : {51, 101, 151}) {
    for (double cutoff : {0.1, 0.21875, 0.4, 0.5}) {
      FirFilter f = DesignLowpassFir(cutoff, taps);
      REQUIRE(static_cast<int>(f.taps.size()) == taps);
      CHECK(taps % 2 == 1);
      double dc = 0.0;
      for (int i = 0; i < taps; ++i) {
        dc += f.taps[i];
        CHECK(std::fabs(f.taps[i] - f.taps[taps - 1 - i]) <= 1e-12);
      }
      CHECK(std::fabs(dc - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("design rejects invalid arguments") {
  CHECK_THROWS_AS(DesignLowpassFir(0.25, 100), Error);
  CHECK_THROWS_AS(DesignLowpassFir(0.0, 101), Error);
  CHECK_THROWS_AS(DesignLowpassFir(0.6, 101), Error);
}

TEST_CASE("nyquist cutoff is a near-delta") {
  FirFilter f = DesignLowpassFir(0.5, 101);
  Rng rng(11);
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.resize(8000);
  for (double &x : w.samples) x = rng.Uniform(-0.5, 0.5);
  Waveform out = ApplyFir(w, f);
  double db = 20.0 * std::log10(Rms(out.samples) / Rms(w.samples));
  CHECK(std::fabs(db) < 0.5);
}

TEST_CASE("3.5 kHz lowpass passes 1 kHz and kills 7 kHz") {
  FirFilter f = DesignLowpassFir(0.21875, 101);  // 3.5 kHz at 16 kHz
  std::size_t n = 16000;
  // Steady-state probe window away from the convolution edges.
  std::size_t begin = 2048;
  std::size_t len = 8192;

  Waveform pass = Sine(1000.0, 16000.0, n);
  Waveform pass_out = ApplyFir(pass, f);
  double in_mag =
      testutil::DftMagnitude(pass.samples, begin, len, 1000.0, 16000.0);
  double out_mag =
      testutil::DftMagnitude(pass_out.samples, begin, len, 1000.0, 16000.0);
  double pass_db = 20.0 * std::log10(out_mag / in_mag);
  CHECK(std::fabs(pass_db) <= 1.0);

  Waveform stop = Sine(7000.0, 16000.0, n);
  Waveform stop_out = ApplyFir(stop, f);
  double stop_in =
      testutil::DftMagnitude(stop.samples, begin, len, 7000.0, 16000.0);
  double stop_res =
      testutil::DftMagnitude(stop_out.samples, begin, len, 7000.0, 16000.0);
  double atten_db = 20.0 * std::log10(stop_in / stop_res);
  CHECK(atten_db >= 40.0);
}

TEST_CASE("tones at 1.5x cutoff are attenuated at least 40 dB") {
  Rng rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    bool nb = trial % 2 == 0;
    double cutoff_hz = nb ? rng.Uniform(3000.0, 4000.0)
                          : rng.Uniform(6000.0, 7800.0) / 1.5;
    int taps = 101 + 2 * static_cast<int>(rng.Below(26));
    FirFilter f = DesignLowpassFir(cutoff_hz / 16000.0, taps);
    double probe_hz = 1.5 * cutoff_hz;
    Waveform tone = Sine(probe_hz, 16000.0, 16000);
    Waveform out = ApplyFir(tone, f);
    double in_mag =
        testutil::DftMagnitude(tone.samples, 2048, 8192, probe_hz, 16000.0);
    double out_mag =
        testutil::DftMagnitude(out.samples, 2048, 8192, probe_hz, 16000.0);
    CHECK(20.0 * std::log10(in_mag / out_mag) >= 40.0);
  }
}

TEST_CASE("unit impulse reproduces the tap sequence") {
  FirFilter f = DesignLowpassFir(0.2, 7);
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.assign(64, 0.0);
  w.samples[30] = 1.0;
  Waveform out = ApplyFir(w, f);
  for (std::size_t i = 0; i < 7; ++i)
    CHECK(out.samples[27 + i] == doctest::Approx(f.taps[i]).epsilon(1e-15));
}

TEST_CASE("DC input passes through with unit gain in the interior") {
  FirFilter f = DesignLowpassFir(0.25, 31);
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.assign(200, 0.5);
  Waveform out = ApplyFir(w, f);
  for (std::size_t i = 15; i < 200 - 15; ++i)
    CHECK(std::fabs(out.samples[i] - 0.5) <= 1e-9);
}

TEST_CASE("same-mode convolution matches the brute-force oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 64 + rng.Below(100);
    int taps = 7 + 2 * static_cast<int>(rng.Below(20));
    Waveform w;
    w.sample_rate_hz = 16000;
    w.samples.resize(n);
    for (double &x : w.samples) x = rng.Uniform(-1.0, 1.0);
    FirFilter f = DesignLowpassFir(rng.Uniform(0.05, 0.5), taps);
    Waveform out = ApplyFir(w, f);
    auto oracle = testutil::BruteSameConvolution(w.samples, f.taps);
    REQUIRE(out.samples.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::fabs(out.samples[i] - oracle[i]) <= 1e-12);
  }
}

TEST_CASE("filtering is linear") {
  Rng rng(6);
  std::size_t n = 256;
  Waveform x, y;
  x.samples.resize(n);
  y.samples.resize(n);
  for (double &v : x.samples) v = rng.Uniform(-1.0, 1.0);
  for (double &v : y.samples) v = rng.Uniform(-1.0, 1.0);
  double a = 0.7, b = -1.3;
  Waveform combo;
  combo.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    combo.samples[i] = a * x.samples[i] + b * y.samples[i];
  FirFilter f = DesignLowpassFir(0.2, 41);
  Waveform fx = ApplyFir(x, f);
  Waveform fy = ApplyFir(y, f);
  Waveform fc = ApplyFir(combo, f);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::fabs(fc.samples[i] - (a * fx.samples[i] + b * fy.samples[i])) <=
          1e-10);
}

TEST_CASE("filter longer than the signal is rejected") {
  FirFilter f = DesignLowpassFir(0.2, 101);
  Waveform w;
  w.samples.assign(50, 0.1);
  CHECK_THROWS_AS(ApplyFir(w, f), Error);
}

TEST_CASE("sampled configs are reproducible and in range") {
  FirSamplingRanges ranges;
  Rng a(123), b(123);
  FirConfig ca = SampleFirConfig(BandClass::kNarrowband, 16000, ranges, &a);
  FirConfig cb = SampleFirConfig(BandClass::kNarrowband, 16000, ranges, &b);
  CHECK(ca.cutoff_norm == cb.cutoff_norm);
  CHECK(ca.num_taps == cb.num_taps);

  Rng rng(321);
  for (int i = 0; i < 10000; ++i) {
    FirConfig nb = SampleFirConfig(BandClass::kNarrowband, 16000, ranges, &rng);
    double hz = nb.cutoff_norm * 16000.0;
    CHECK(hz >= 3000.0);
    CHECK(hz <= 4000.0);
    CHECK(nb.num_taps % 2 == 1);
    CHECK(nb.num_taps >= 51);
    CHECK(nb.num_taps <= 151);
  }
  for (int i = 0; i < 10000; ++i) {
    FirConfig wb = SampleFirConfig(BandClass::kWideband, 16000, ranges, &rng);
    double hz = wb.cutoff_norm * 16000.0;
    CHECK(hz >= 6000.0);
    CHECK(hz <= 7800.0);
    CHECK(wb.num_taps % 2 == 1);
  }
}
