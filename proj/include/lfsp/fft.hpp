// lfsp/fft.hpp -- iterative radix-2 FFT for power-of-two sizes.
//
// Copyright 2026 lfsp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef LFSP_FFT_HPP_
#define LFSP_FFT_HPP_

#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <vector>

#include "lfsp/common.hpp"

namespace lfsp {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

// Forward-transform twiddles exp(-2*pi*i*j/n), j in [0, n/2).  Cached per
// thread so concurrent transforms never share mutable state.
inline const std::vector<std::complex<double>>& fft_twiddles(std::size_t n) {
  thread_local std::map<std::size_t, std::vector<std::complex<double>>> cache;
  auto& table = cache[n];
  if (table.empty() && n >= 2) {
    table.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
      table[j] = std::polar(1.0, -2.0 * std::numbers::pi * double(j) / double(n));
    }
  }
  return table;
}

}  // namespace detail

// In-place radix-2 decimation-in-time FFT.  The inverse transform includes
// the 1/n scaling.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  check_arg(is_power_of_two(n), "fft: size must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const auto& tw = detail::fft_twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> w = tw[j * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }

  if (inverse) {
    const double inv = 1.0 / double(n);
    for (auto& x : a) x *= inv;
  }
}

}  // namespace lfsp

#endif  // LFSP_FFT_HPP_
