// fex/fft.h

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

#ifndef FEX_FFT_H_
#define FEX_FFT_H_

#include <complex>
#include <cstdint>
#include <vector>

namespace fex {

// Iterative radix-2 complex FFT over a fixed power-of-two size. Twiddle
// factors and the bit-reversal permutation are precomputed at construction,
// so a plan can be shared (const) across threads.
class Fft {
 public:
  explicit Fft(int64_t size);

  int64_t size() const { return size_; }

  // In-place transforms. `data` must hold exactly size() elements.
  void forward(std::complex<double>* data) const;
  // Unscaled inverse followed by division by size(), so inverse(forward(x)) == x.
  void inverse(std::complex<double>* data) const;

 private:
  void transform(std::complex<double>* data, bool invert) const;

  int64_t size_;
  std::vector<uint32_t> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2*pi*i*k/size)
};

}  // namespace fex

#endif  // FEX_FFT_H_
