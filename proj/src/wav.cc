// src/wav.cc

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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "spoofkit/error.h"

namespace spoofkit {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t ReadU16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::string *out, std::uint16_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>((v >> 8) & 0xFF));
}

void PutU32(std::string *out, std::uint32_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>((v >> 8) & 0xFF));
  out->push_back(static_cast<char>((v >> 16) & 0xFF));
  out->push_back(static_cast<char>((v >> 24) & 0xFF));
}

[[noreturn]] void Malformed(const std::filesystem::path &path,
                            const std::string &what) {
  throw Error("malformed WAV header in " + path.string() + ": " + what);
}

}  // namespace

std::int16_t QuantizeSample(double x) {
  long v = std::lround(x * 32767.0);  // lround is half-away-from-zero
  v = std::clamp(v, -32768L, 32767L);
  return static_cast<std::int16_t>(v);
}

Waveform ReadWav(const std::filesystem::path &path, int expected_rate_hz) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open WAV file: " + path.string());

  unsigned char riff[12];
  if (!in.read(reinterpret_cast<char *>(riff), 12))
    Malformed(path, "file shorter than RIFF header");
  if (std::memcmp(riff, "RIFF", 4) != 0) Malformed(path, "missing RIFF tag");
  if (std::memcmp(riff + 8, "WAVE", 4) != 0) Malformed(path, "missing WAVE tag");

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint16_t format = 0;
  std::uint32_t rate = 0;

  // Chunk walk: fmt must precede data; unknown chunks are skipped.
  for (;;) {
    unsigned char hdr[8];
    if (!in.read(reinterpret_cast<char *>(hdr), 8)) {
      Malformed(path, "no data chunk");
    }
    std::uint32_t size = ReadU32(hdr + 4);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16) Malformed(path, "fmt chunk too small");
      unsigned char fmt[16];
      if (!in.read(reinterpret_cast<char *>(fmt), 16))
        Malformed(path, "truncated fmt chunk");
      format = ReadU16(fmt + 0);
      channels = ReadU16(fmt + 2);
      rate = ReadU32(fmt + 4);
      bits = ReadU16(fmt + 14);
      have_fmt = true;
      std::uint32_t extra = size - 16 + (size % 2);
      if (extra > 0 && !in.seekg(extra, std::ios::cur))
        Malformed(path, "truncated fmt chunk");
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (!have_fmt) Malformed(path, "data chunk before fmt chunk");
      if (format != kFormatPcm || bits != 16)
        throw Error("unsupported encoding in " + path.string() +
                     " (expected 16-bit PCM)");
      if (channels != 1)
        throw Error("unsupported channel count in " + path.string() + " (" +
                     std::to_string(channels) + ", expected mono)");
      if (static_cast<int>(rate) != expected_rate_hz)
        throw Error("unsupported sample rate in " + path.string() + " (" +
                     std::to_string(rate) + " Hz, expected " +
                     std::to_string(expected_rate_hz) + " Hz)");
      if (size % 2 != 0) Malformed(path, "odd data chunk size");
      std::size_t n = size / 2;
      if (n == 0) throw Error("empty audio in " + path.string());
      std::vector<unsigned char> raw(size);
      if (!in.read(reinterpret_cast<char *>(raw.data()), size))
        Malformed(path, "truncated data chunk");
      Waveform w;
      w.sample_rate_hz = expected_rate_hz;
      w.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto v = static_cast<std::int16_t>(ReadU16(raw.data() + 2 * i));
        w.samples[i] = static_cast<double>(v) / 32768.0;
      }
      return w;
    } else {
      std::uint32_t skip = size + (size % 2);
      if (!in.seekg(skip, std::ios::cur)) Malformed(path, "truncated chunk");
    }
  }
}

void WriteWav(const std::filesystem::path &path, const Waveform &w) {
  for (double x : w.samples) {
    if (!(std::fabs(x) <= 1.0))
      throw Error("sample magnitude exceeds 1.0; refusing to write " +
                   path.string());
  }
  std::string buf;
  std::size_t n = w.samples.size();
  buf.reserve(44 + 2 * n);
  std::uint32_t data_bytes = static_cast<std::uint32_t>(2 * n);
  buf.append("RIFF");
  PutU32(&buf, 36 + data_bytes);
  buf.append("WAVE");
  buf.append("fmt ");
  PutU32(&buf, 16);
  PutU16(&buf, kFormatPcm);
  PutU16(&buf, 1);  // mono
  PutU32(&buf, static_cast<std::uint32_t>(w.sample_rate_hz));
  PutU32(&buf, static_cast<std::uint32_t>(w.sample_rate_hz) * 2);
  PutU16(&buf, 2);   // block align
  PutU16(&buf, 16);  // bits per sample
  buf.append("data");
  PutU32(&buf, data_bytes);
  for (double x : w.samples) PutU16(&buf, static_cast<std::uint16_t>(QuantizeSample(x)));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace spoofkit
