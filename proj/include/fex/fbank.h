// fex/fbank.h

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

#ifndef FEX_FBANK_H_
#define FEX_FBANK_H_

#include <cstdint>
#include <vector>

#include "fex/framing.h"
#include "fex/matrix.h"

namespace fex {

// mel = 1127 * ln(1 + f/700)
double mel_scale(double freq_hz);
double inverse_mel_scale(double mel);

// Triangular filters with edges equally spaced on the mel scale, weights
// evaluated at FFT bin center frequencies. Immutable once built.
class MelFilterbank {
 public:
  int num_filters() const { return static_cast<int>(filters_.size()); }
  int64_t fft_size() const { return fft_size_; }
  int sample_rate() const { return sample_rate_; }
  double low_freq() const { return low_freq_; }
  double high_freq() const { return high_freq_; }

  // Center frequency of filter j in Hz.
  double center_freq(int j) const { return center_freqs_[j]; }

  // Weighted sum of one magnitude spectrum row over filter j.
  double apply(std::span<const float> spectrum_row, int j) const;

  struct Filter {
    int64_t first_bin = 0;
    std::vector<float> weights;  // contiguous from first_bin
  };
  const Filter& filter(int j) const { return filters_[j]; }

  friend MelFilterbank build_mel_filterbank(int num_filters, int sample_rate,
                                            int64_t fft_size, double low_freq,
                                            double high_freq);

 private:
  std::vector<Filter> filters_;
  std::vector<double> center_freqs_;
  int64_t fft_size_ = 0;
  int sample_rate_ = 0;
  double low_freq_ = 0.0;
  double high_freq_ = 0.0;
};

MelFilterbank build_mel_filterbank(int num_filters, int sample_rate,
                                   int64_t fft_size, double low_freq = 20.0,
                                   double high_freq = 0.0 /* 0 = Nyquist */);

// FBANK(t, j) = ln(max(log_floor, sum_k mag(t, k) * w_j(k))).
FeatureMatrix compute_fbank(const SpectrumMatrix& spectrum,
                            const MelFilterbank& fb, double log_floor = 1e-10);

// Subtracts each column's mean over all frames (utterance-level mean
// normalization; no variance scaling).
FeatureMatrix mean_normalize(const FeatureMatrix& feat);

// Column-wise concatenation after truncating both inputs to the shorter
// frame count; counts may differ by at most tolerance_frames.
FeatureMatrix concat_features(const FeatureMatrix& a, const FeatureMatrix& b,
                              int64_t tolerance_frames = 2);

namespace serial {
FeatureMatrix compute_fbank(const SpectrumMatrix& spectrum,
                            const MelFilterbank& fb, double log_floor = 1e-10);
}  // namespace serial

}  // namespace fex

#endif  // FEX_FBANK_H_
