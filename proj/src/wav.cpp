// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "dynaprune/error.hpp"

namespace dynaprune {
namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t size = bytes.size();

  if (size < 12 || std::memcmp(p, "RIFF", 4) != 0 ||
      std::memcmp(p + 8, "WAVE", 4) != 0) {
    throw FormatError(path.string() + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t off = 12;
  while (off + 8 <= size) {
    const std::uint32_t chunk_len = read_u32(p + off + 4);
    const unsigned char* chunk = p + off + 8;
    if (off + 8 + chunk_len > size) {
      throw FormatError(path.string() + ": truncated chunk");
    }
    if (std::memcmp(p + off, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw FormatError(path.string() + ": short fmt chunk");
      format = read_u16(chunk);
      channels = read_u16(chunk + 2);
      rate = read_u32(chunk + 4);
      bits = read_u16(chunk + 14);
      have_fmt = true;
    } else if (std::memcmp(p + off, "data", 4) == 0) {
      data = chunk;
      data_len = chunk_len;
    }
    off += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw FormatError(path.string() + ": missing fmt or data chunk");
  }
  if (format != kFormatPcm) {
    throw FormatError(path.string() + ": only PCM is supported");
  }
  if (channels != 1) {
    throw FormatError(path.string() + ": only mono is supported");
  }
  if (bits != 16) {
    throw FormatError(path.string() + ": only 16-bit samples are supported");
  }
  if (rate == 0) throw FormatError(path.string() + ": zero sample rate");
  if (data_len % 2 != 0) {
    throw FormatError(path.string() + ": odd data chunk length");
  }

  WavData out;
  out.sample_rate = static_cast<int>(rate);
  out.samples.resize(data_len / 2);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const std::int16_t s = static_cast<std::int16_t>(read_u16(data + 2 * i));
    out.samples[i] = static_cast<float>(s) / 32768.0f;
  }
  return out;
}

void write_wav_pcm16(const std::filesystem::path& path,
                     std::span<const float> samples, int sample_rate) {
  if (sample_rate <= 0) throw ArgumentError("write_wav: sample_rate must be positive");
  const std::uint32_t data_len = static_cast<std::uint32_t>(samples.size() * 2);
  std::string out;
  out.reserve(44 + data_len);
  out.append("RIFF");
  put_u32(out, 36 + data_len);
  out.append("WAVE");
  out.append("fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate) * 2);  // byte rate
  put_u16(out, 2);   // block align
  put_u16(out, 16);  // bits per sample
  out.append("data");
  put_u32(out, data_len);
  for (const float v : samples) {
    const double scaled = std::llround(static_cast<double>(v) * 32768.0);
    const auto q = static_cast<std::int16_t>(
        std::clamp<double>(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(q));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed for " + path.string());
}

}  // namespace dynaprune
