// tests/test_wav.cc

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

#include "spoofkit/wav.h"

#include <doctest.h>

#include <cstdint>
#include <fstream>

#include "spoofkit/error.h"
#include "spoofkit/rng.h"
#include "test_util.h"

using namespace spoofkit;

namespace {

void PutU16(std::ofstream &out, std::uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
  out.write(b, 2);
}

void PutU32(std::ofstream &out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
               static_cast<char>((v >> 16) & 0xFF),
               static_cast<char>((v >> 24) & 0xFF)};
  out.write(b, 4);
}

// Hand-assembled canonical 44-byte header + payload.
void WriteRawWav(const std::filesystem::path &path, std::uint16_t channels,
                 std::uint32_t rate, std::uint16_t bits, std::uint16_t format,
                 const std::vector<std::int16_t> &samples) {
  std::ofstream out(path, std::ios::binary);
  auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  out.write("RIFF", 4);
  PutU32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  PutU32(out, 16);
  PutU16(out, format);
  PutU16(out, channels);
  PutU32(out, rate);
  PutU32(out, rate * channels * bits / 8);
  PutU16(out, static_cast<std::uint16_t>(channels * bits / 8));
  PutU16(out, bits);
  out.write("data", 4);
  PutU32(out, data_bytes);
  for (std::int16_t s : samples) PutU16(out, static_cast<std::uint16_t>(s));
}

}  // namespace

TEST_CASE("wav roundtrip is sample-exact after quantization") {
  auto dir = testutil::ScratchDir("wav_roundtrip");
  Rng rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    Waveform w;
    w.sample_rate_hz = 16000;
    w.samples.resize(1000 + 100 * trial);
    for (double &x : w.samples) x = rng.Uniform(-1.0, 1.0);
    WriteWav(dir / "t.wav", w);
    Waveform r = ReadWav(dir / "t.wav", 16000);
    REQUIRE(r.samples.size() == w.samples.size());
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
      // Write scale 32767 vs read scale 32768 skews full-scale samples by up
      // to (|x| + 0.5)/32768.
      double bound = (std::fabs(w.samples[i]) + 0.5) / 32768.0;
      CHECK(std::fabs(r.samples[i] - w.samples[i]) <= bound);
      CHECK(std::fabs(r.samples[i]) <= 1.0);
      CHECK(std::isfinite(r.samples[i]));
    }
  }
}

TEST_CASE("wav roundtrip at half scale stays within one quantization step") {
  auto dir = testutil::ScratchDir("wav_roundtrip_half");
  Rng rng(7);
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.resize(2048);
  for (double &x : w.samples) x = rng.Uniform(-0.5, 0.5);
  WriteWav(dir / "t.wav", w);
  Waveform r = ReadWav(dir / "t.wav", 16000);
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    CHECK(std::fabs(r.samples[i] - w.samples[i]) <= 1.0 / 32768.0);
}

TEST_CASE("hand-assembled single-sample file decodes to 32767/32768") {
  auto dir = testutil::ScratchDir("wav_hand");
  WriteRawWav(dir / "one.wav", 1, 16000, 16, 1, {0x7FFF});
  Waveform w = ReadWav(dir / "one.wav", 16000);
  REQUIRE(w.samples.size() == 1);
  CHECK(w.samples[0] == doctest::Approx(0.999969482421875).epsilon(1e-15));
  CHECK(w.sample_rate_hz == 16000);
}

TEST_CASE("writer emits 44 + 2N bytes for N samples") {
  auto dir = testutil::ScratchDir("wav_size");
  for (std::size_t n : {1u, 10u, 357u}) {
    Waveform w;
    w.sample_rate_hz = 16000;
    w.samples.assign(n, 0.0);
    WriteWav(dir / "z.wav", w);
    CHECK(std::filesystem::file_size(dir / "z.wav") == 44 + 2 * n);
  }
}

TEST_CASE("quantizer boundaries") {
  CHECK(QuantizeSample(1.0) == 32767);
  CHECK(QuantizeSample(-1.0) == -32767);  // round(-32767.0)
  CHECK(QuantizeSample(0.0) == 0);
  // Half-away-from-zero.
  CHECK(QuantizeSample(0.5 / 32767.0) == 1);
  CHECK(QuantizeSample(-0.5 / 32767.0) == -1);
}

TEST_CASE("unsupported and malformed inputs are reported distinctly") {
  auto dir = testutil::ScratchDir("wav_errors");

  WriteRawWav(dir / "stereo.wav", 2, 16000, 16, 1, {0, 0});
  CHECK_THROWS_WITH_AS(ReadWav(dir / "stereo.wav", 16000),
                       doctest::Contains("unsupported channel count"), Error);

  WriteRawWav(dir / "rate.wav", 1, 8000, 16, 1, {0});
  CHECK_THROWS_WITH_AS(ReadWav(dir / "rate.wav", 16000),
                       doctest::Contains("unsupported sample rate"), Error);

  WriteRawWav(dir / "float.wav", 1, 16000, 16, 3, {0});
  CHECK_THROWS_WITH_AS(ReadWav(dir / "float.wav", 16000),
                       doctest::Contains("unsupported encoding"), Error);

  {
    std::ofstream bad(dir / "bad.wav", std::ios::binary);
    bad << "JUNKJUNKJUNKJUNK";
  }
  CHECK_THROWS_WITH_AS(ReadWav(dir / "bad.wav", 16000),
                       doctest::Contains("malformed WAV header"), Error);

  CHECK_THROWS_AS(ReadWav(dir / "missing.wav", 16000), Error);

  Waveform loud;
  loud.samples = {1.5};
  CHECK_THROWS_WITH_AS(WriteWav(dir / "loud.wav", loud),
                       doctest::Contains("exceeds 1.0"), Error);
}

TEST_CASE("reader skips unknown chunks before data") {
  auto dir = testutil::ScratchDir("wav_chunks");
  std::ofstream out(dir / "extra.wav", std::ios::binary);
  out.write("RIFF", 4);
  PutU32(out, 36 + 9 + 2);  // fmt + LIST(1 byte payload + pad) + data
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, 1);
  PutU32(out, 16000);
  PutU32(out, 32000);
  PutU16(out, 2);
  PutU16(out, 16);
  out.write("LIST", 4);
  PutU32(out, 1);
  out.put('x');
  out.put('\0');  // chunk padding
  out.write("data", 4);
  PutU32(out, 2);
  PutU16(out, 0x4000);
  out.close();
  Waveform w = ReadWav(dir / "extra.wav", 16000);
  REQUIRE(w.samples.size() == 1);
  CHECK(w.samples[0] == doctest::Approx(0.5).epsilon(1e-12));
}
