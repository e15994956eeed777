// lfsp/wav.hpp -- mono PCM16 WAV reading and writing.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_WAV_HPP_
#define LFSP_WAV_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "lfsp/checkpoint.hpp"
#include "lfsp/common.hpp"
#include "lfsp/dsp.hpp"

namespace lfsp {

// Reads a mono PCM16 WAV file.  When expected_rate is nonzero the file's
// sample rate must match it exactly; no resampling is performed.
inline Waveform wav_read(const std::string& path, int expected_rate = 0) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::kBadHeader,
                             "wav_read: cannot open " + path);

  char riff[4];
  detail::read_bytes(in, riff, 4, "RIFF tag");
  std::uint32_t riff_size = 0;
  detail::read_pod(in, riff_size, "RIFF size");
  char wave[4];
  detail::read_bytes(in, wave, 4, "WAVE tag");
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(wave, "WAVE", 4) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic,
                      "wav_read: not a RIFF/WAVE file: " + path);
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  std::vector<std::int16_t> pcm;
  bool have_data = false;

  while (in.peek() != std::char_traits<char>::eof()) {
    char chunk_id[4];
    detail::read_bytes(in, chunk_id, 4, "chunk id");
    std::uint32_t chunk_size = 0;
    detail::read_pod(in, chunk_size, "chunk size");
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      if (chunk_size < 16) {
        throw FormatError(FormatError::Kind::kBadHeader, "wav_read: short fmt chunk");
      }
      detail::read_pod(in, format, "fmt.format");
      detail::read_pod(in, channels, "fmt.channels");
      detail::read_pod(in, rate, "fmt.rate");
      std::uint32_t byte_rate = 0;
      std::uint16_t block_align = 0;
      detail::read_pod(in, byte_rate, "fmt.byte_rate");
      detail::read_pod(in, block_align, "fmt.block_align");
      detail::read_pod(in, bits, "fmt.bits");
      if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      pcm.resize(chunk_size / 2);
      detail::read_bytes(in, reinterpret_cast<char*>(pcm.data()),
                         pcm.size() * 2, "data payload");
      have_data = true;
      break;
    } else {
      in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
      if (!in) throw FormatError(FormatError::Kind::kTruncated,
                                 "wav_read: truncated chunk in " + path);
    }
  }

  if (!have_fmt || !have_data) {
    throw FormatError(FormatError::Kind::kTruncated,
                      "wav_read: missing fmt or data chunk in " + path);
  }
  if (format != 1 || bits != 16) {
    throw FormatError(FormatError::Kind::kUnsupported,
                      "wav_read: only PCM16 is supported: " + path);
  }
  if (channels != 1) {
    throw FormatError(FormatError::Kind::kUnsupported,
                      "wav_read: only mono files are supported: " + path);
  }
  if (expected_rate != 0 && rate != std::uint32_t(expected_rate)) {
    throw FormatError(FormatError::Kind::kUnsupported,
                      "wav_read: sample rate " + std::to_string(rate) +
                          " does not match expected " + std::to_string(expected_rate));
  }

  Waveform w;
  w.sample_rate = int(rate);
  w.samples.resize(pcm.size());
  for (std::size_t i = 0; i < pcm.size(); ++i) w.samples[i] = double(pcm[i]) / 32768.0;
  return w;
}

// Writes a mono PCM16 WAV file; samples are clamped to [-1, 1] first.
inline void wav_write(const std::string& path, const Waveform& wave) {
  check_arg(wave.sample_rate >= 1, "wav_write: sample_rate must be >= 1");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "wav_write: cannot open " + path);

  const std::uint32_t data_size = std::uint32_t(wave.samples.size() * 2);
  out.write("RIFF", 4);
  detail::write_pod(out, std::uint32_t(36 + data_size));
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  detail::write_pod(out, std::uint32_t(16));
  detail::write_pod(out, std::uint16_t(1));  // PCM
  detail::write_pod(out, std::uint16_t(1));  // mono
  detail::write_pod(out, std::uint32_t(wave.sample_rate));
  detail::write_pod(out, std::uint32_t(wave.sample_rate * 2));
  detail::write_pod(out, std::uint16_t(2));
  detail::write_pod(out, std::uint16_t(16));
  out.write("data", 4);
  detail::write_pod(out, data_size);
  for (double x : wave.samples) {
    const double clamped = std::clamp(x, -1.0, 1.0);
    detail::write_pod(out, std::int16_t(std::lrint(clamped * 32767.0)));
  }
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "wav_write: write failed for " + path);
}

}  // namespace lfsp

#endif  // LFSP_WAV_HPP_
