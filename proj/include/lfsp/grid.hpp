// lfsp/grid.hpp -- frames x bins spectral grids (row-major).
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_GRID_HPP_
#define LFSP_GRID_HPP_

#include <complex>
#include <cstddef>
#include <vector>

#include "lfsp/common.hpp"

namespace lfsp {

template <typename T>
struct BasicGrid {
  std::size_t frames = 0;
  std::size_t bins = 0;
  std::vector<T> data;  // row-major, frames x bins

  BasicGrid() = default;
  BasicGrid(std::size_t f, std::size_t b, T fill = T())
      : frames(f), bins(b), data(f * b, fill) {}

  T& at(std::size_t f, std::size_t b) { return data[f * bins + b]; }
  const T& at(std::size_t f, std::size_t b) const { return data[f * bins + b]; }

  T* row(std::size_t f) { return data.data() + f * bins; }
  const T* row(std::size_t f) const { return data.data() + f * bins; }

  std::size_t size() const { return data.size(); }

  bool same_shape(const BasicGrid& other) const {
    return frames == other.frames && bins == other.bins;
  }

  friend bool operator==(const BasicGrid&, const BasicGrid&) = default;
};

using RealGrid = BasicGrid<double>;
using ComplexGrid = BasicGrid<std::complex<double>>;

// Semantic aliases.  Log-amplitude grids hold natural logs of magnitudes;
// phase grids hold wrapped radians in (-pi, pi]; amplitude grids hold
// nonnegative linear magnitudes.
using LogAmpGrid = RealGrid;
using PhaseGrid = RealGrid;
using AmpGrid = RealGrid;

inline std::vector<double> grid_column(const RealGrid& g, std::size_t bin) {
  std::vector<double> col(g.frames);
  for (std::size_t f = 0; f < g.frames; ++f) col[f] = g.at(f, bin);
  return col;
}

inline void set_grid_column(RealGrid& g, std::size_t bin,
                            const std::vector<double>& col) {
  for (std::size_t f = 0; f < g.frames; ++f) g.at(f, bin) = col[f];
}

}  // namespace lfsp

#endif  // LFSP_GRID_HPP_
