// fex/framing.h

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

#ifndef FEX_FRAMING_H_
#define FEX_FRAMING_H_

#include <cstdint>
#include <vector>

#include "fex/matrix.h"

namespace fex {

enum class WindowKind { kHamming, kHann, kRectangular };

struct FramingConfig {
  double frame_rate = 100.0;      // frames per second
  double frame_length_ms = 25.0;
  double preemphasis_coeff = 0.97;
  WindowKind window = WindowKind::kHamming;
  int64_t fft_size = 0;           // 0 = smallest power of two >= frame length
  double dither_amplitude = 0.0;  // 0 = off
  bool snip_edges = true;

  int64_t hop_samples(int sample_rate) const;
  int64_t frame_length_samples(int sample_rate) const;
  int64_t effective_fft_size(int sample_rate) const;
  void validate(int sample_rate) const;
};

// Magnitude spectra, one row per frame, fft_size/2 + 1 columns.
struct SpectrumMatrix {
  Matrix mag;
  double frame_rate = 0.0;
  int64_t fft_size = 0;
};

// y[n] = x[n] - coeff*x[n-1]; the n = 0 term uses x[0] in place of x[-1].
std::vector<float> preemphasize(const std::vector<float>& samples, double coeff);

int64_t num_frames(int64_t num_samples, const FramingConfig& cfg, int sample_rate);

// Slices frames of frame_length_samples every hop_samples. Frame i covers
// [i*hop, i*hop + frame_length). With dither_amplitude > 0, uniform noise in
// [-a, a] is added from a per-frame stream derived from dither_seed, so the
// result is independent of thread count.
Matrix frame_signal(const std::vector<float>& samples, int sample_rate,
                    const FramingConfig& cfg, uint64_t dither_seed = 0);

// Window each frame, zero-pad to fft_size, DFT, magnitudes of bins
// 0..fft_size/2.
SpectrumMatrix window_and_spectrum(const Matrix& frames, int sample_rate,
                                   const FramingConfig& cfg);

std::vector<float> make_window(WindowKind kind, int64_t length);

namespace serial {
SpectrumMatrix window_and_spectrum(const Matrix& frames, int sample_rate,
                                   const FramingConfig& cfg);
}  // namespace serial

}  // namespace fex

#endif  // FEX_FRAMING_H_
