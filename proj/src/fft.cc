// fex/fft.cc

// Copyright 2026  fex authors

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

#include "fex/fft.h"

#include <cmath>
#include <numbers>

#include "fex/common.h"

namespace fex {

Fft::Fft(int64_t size) : size_(size) {
  require(is_power_of_two(size), "Fft: size must be a power of two, got ", size);
  bit_reverse_.resize(size);
  int log2n = 0;
  while ((int64_t{1} << log2n) < size) ++log2n;
  for (int64_t i = 0; i < size; ++i) {
    uint32_t r = 0;
    for (int b = 0; b < log2n; ++b)
      if (i & (int64_t{1} << b)) r |= 1u << (log2n - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (int64_t k = 0; k < size / 2; ++k) {
    double a = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
    twiddles_[k] = {std::cos(a), std::sin(a)};
  }
}

void Fft::transform(std::complex<double>* data, bool invert) const {
  for (int64_t i = 0; i < size_; ++i) {
    int64_t j = bit_reverse_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (int64_t len = 2; len <= size_; len <<= 1) {
    int64_t half = len >> 1;
    int64_t stride = size_ / len;
    for (int64_t start = 0; start < size_; start += len) {
      for (int64_t k = 0; k < half; ++k) {
        std::complex<double> w = twiddles_[k * stride];
        if (invert) w = std::conj(w);
        std::complex<double> even = data[start + k];
        std::complex<double> odd = data[start + k + half] * w;
        data[start + k] = even + odd;
        data[start + k + half] = even - odd;
      }
    }
  }
}

void Fft::forward(std::complex<double>* data) const { transform(data, false); }

void Fft::inverse(std::complex<double>* data) const {
  transform(data, true);
  double inv = 1.0 / static_cast<double>(size_);
  for (int64_t i = 0; i < size_; ++i) data[i] *= inv;
}

}  // namespace fex
