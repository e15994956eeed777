// lfsp/checkpoint.hpp -- binary model checkpoints.
//
// Format: magic "NSP1", u32 version = 1, u32 input_bins, u32 channels,
// u32 num_blocks, u32 kernel_time, then per tensor: u16 name length,
// UTF-8 name, u8 rank, u32 dims, float64 little-endian payload.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_CHECKPOINT_HPP_
#define LFSP_CHECKPOINT_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "lfsp/common.hpp"
#include "lfsp/model.hpp"

namespace lfsp {

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

namespace detail {

template <typename T>
inline void write_pod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
inline void read_pod(std::istream& in, T& value, const char* what) {
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw FormatError(FormatError::Kind::kTruncated,
                             std::string("truncated file while reading ") + what);
}

inline void read_bytes(std::istream& in, char* dst, std::size_t n, const char* what) {
  in.read(dst, std::streamsize(n));
  if (!in) throw FormatError(FormatError::Kind::kTruncated,
                             std::string("truncated file while reading ") + what);
}

}  // namespace detail

inline constexpr char kCheckpointMagic[4] = {'N', 'S', 'P', '1'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

inline void save_model(const ModelParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "save_model: cannot open " + path);
  out.write(kCheckpointMagic, 4);
  detail::write_pod(out, kCheckpointVersion);
  detail::write_pod(out, std::uint32_t(params.arch.input_bins));
  detail::write_pod(out, std::uint32_t(params.arch.channels));
  detail::write_pod(out, std::uint32_t(params.arch.num_blocks));
  detail::write_pod(out, std::uint32_t(params.arch.kernel_time));
  for (const Tensor& t : params.tensors) {
    detail::write_pod(out, std::uint16_t(t.name.size()));
    out.write(t.name.data(), std::streamsize(t.name.size()));
    detail::write_pod(out, std::uint8_t(t.dims.size()));
    for (std::uint32_t d : t.dims) detail::write_pod(out, d);
    out.write(reinterpret_cast<const char*>(t.data.data()),
              std::streamsize(t.data.size() * sizeof(double)));
  }
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "save_model: write failed for " + path);
}

inline ModelParams load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::kBadHeader,
                             "load_model: cannot open " + path);

  char magic[4];
  detail::read_bytes(in, magic, 4, "magic");
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic,
                      "load_model: bad magic in " + path);
  }
  std::uint32_t version = 0;
  detail::read_pod(in, version, "version");
  if (version != kCheckpointVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "load_model: unsupported version " + std::to_string(version));
  }

  std::uint32_t bins = 0, channels = 0, blocks = 0, kernel = 0;
  detail::read_pod(in, bins, "input_bins");
  detail::read_pod(in, channels, "channels");
  detail::read_pod(in, blocks, "num_blocks");
  detail::read_pod(in, kernel, "kernel_time");

  ModelParams params;
  params.arch = ModelArch{int(bins), int(channels), int(blocks), int(kernel)};
  params.arch.validate();

  const std::size_t expected = params.tensor_count();
  params.tensors.reserve(expected);
  for (std::size_t t = 0; t < expected; ++t) {
    std::uint16_t name_len = 0;
    detail::read_pod(in, name_len, "tensor name length");
    std::string name(name_len, '\0');
    detail::read_bytes(in, name.data(), name_len, "tensor name");
    std::uint8_t rank = 0;
    detail::read_pod(in, rank, "tensor rank");
    std::vector<std::uint32_t> dims(rank);
    std::size_t count = 1;
    for (std::uint8_t r = 0; r < rank; ++r) {
      detail::read_pod(in, dims[r], "tensor dims");
      count *= dims[r];
    }
    Tensor tensor{std::move(name), std::move(dims), std::vector<double>(count)};
    detail::read_bytes(in, reinterpret_cast<char*>(tensor.data.data()),
                       count * sizeof(double), "tensor payload");
    params.tensors.push_back(std::move(tensor));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError(FormatError::Kind::kBadHeader,
                      "load_model: trailing data after last tensor in " + path);
  }
  return params;
}

}  // namespace lfsp

#endif  // LFSP_CHECKPOINT_HPP_
