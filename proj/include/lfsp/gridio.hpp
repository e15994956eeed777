// lfsp/gridio.hpp -- binary spectral-grid files.
//
// Format: magic "SPG1", u32 version = 1, u8 kind (0 log-amplitude, 1 phase,
// 2 complex-interleaved), u64 frames, u64 bins, row-major float64
// little-endian payload (complex values interleaved re, im).
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_GRIDIO_HPP_
#define LFSP_GRIDIO_HPP_

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "lfsp/checkpoint.hpp"
#include "lfsp/common.hpp"
#include "lfsp/grid.hpp"

namespace lfsp {

enum class GridKind : std::uint8_t {
  kLogAmplitude = 0,
  kPhase = 1,
  kComplex = 2,
};

// A grid as stored on disk; `kind` selects which member is populated.
struct StoredGrid {
  GridKind kind = GridKind::kLogAmplitude;
  RealGrid real;
  ComplexGrid cplx;
};

inline constexpr char kGridMagic[4] = {'S', 'P', 'G', '1'};
inline constexpr std::uint32_t kGridVersion = 1;

namespace detail {

inline void write_grid_header(std::ostream& out, GridKind kind,
                              std::uint64_t frames, std::uint64_t bins) {
  out.write(kGridMagic, 4);
  write_pod(out, kGridVersion);
  write_pod(out, std::uint8_t(kind));
  write_pod(out, frames);
  write_pod(out, bins);
}

}  // namespace detail

inline void grid_write(const std::string& path, const RealGrid& grid, GridKind kind) {
  check_arg(kind == GridKind::kLogAmplitude || kind == GridKind::kPhase,
            "grid_write: real grids must be log-amplitude or phase kind");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "grid_write: cannot open " + path);
  detail::write_grid_header(out, kind, grid.frames, grid.bins);
  out.write(reinterpret_cast<const char*>(grid.data.data()),
            std::streamsize(grid.data.size() * sizeof(double)));
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "grid_write: write failed for " + path);
}

inline void grid_write(const std::string& path, const ComplexGrid& grid) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "grid_write: cannot open " + path);
  detail::write_grid_header(out, GridKind::kComplex, grid.frames, grid.bins);
  out.write(reinterpret_cast<const char*>(grid.data.data()),
            std::streamsize(grid.data.size() * sizeof(std::complex<double>)));
  if (!out) throw FormatError(FormatError::Kind::kBadHeader,
                              "grid_write: write failed for " + path);
}

inline StoredGrid grid_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatError::Kind::kBadHeader,
                             "grid_read: cannot open " + path);

  char magic[4];
  detail::read_bytes(in, magic, 4, "magic");
  if (std::memcmp(magic, kGridMagic, 4) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic, "grid_read: bad magic in " + path);
  }
  std::uint32_t version = 0;
  detail::read_pod(in, version, "version");
  if (version != kGridVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "grid_read: unsupported version " + std::to_string(version));
  }
  std::uint8_t kind_raw = 0;
  detail::read_pod(in, kind_raw, "kind");
  if (kind_raw > std::uint8_t(GridKind::kComplex)) {
    throw FormatError(FormatError::Kind::kBadHeader,
                      "grid_read: unknown grid kind " + std::to_string(kind_raw));
  }
  std::uint64_t frames = 0, bins = 0;
  detail::read_pod(in, frames, "frames");
  detail::read_pod(in, bins, "bins");

  StoredGrid stored;
  stored.kind = GridKind(kind_raw);
  if (stored.kind == GridKind::kComplex) {
    stored.cplx = ComplexGrid(std::size_t(frames), std::size_t(bins));
    detail::read_bytes(in, reinterpret_cast<char*>(stored.cplx.data.data()),
                       stored.cplx.data.size() * sizeof(std::complex<double>),
                       "complex payload");
  } else {
    stored.real = RealGrid(std::size_t(frames), std::size_t(bins));
    detail::read_bytes(in, reinterpret_cast<char*>(stored.real.data.data()),
                       stored.real.data.size() * sizeof(double), "payload");
  }
  return stored;
}

// Reads a grid and requires it to be real-valued (log-amplitude or phase).
inline RealGrid grid_read_real(const std::string& path) {
  StoredGrid stored = grid_read(path);
  if (stored.kind == GridKind::kComplex) {
    throw FormatError(FormatError::Kind::kUnsupported,
                      "grid_read_real: expected a real-valued grid in " + path);
  }
  return std::move(stored.real);
}

}  // namespace lfsp

#endif  // LFSP_GRIDIO_HPP_
