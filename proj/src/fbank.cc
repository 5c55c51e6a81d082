// fex/fbank.cc

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

#include "fex/fbank.h"

#include <algorithm>
#include <cmath>

#include "fex/common.h"

namespace fex {

double mel_scale(double freq_hz) { return 1127.0 * std::log(1.0 + freq_hz / 700.0); }

double inverse_mel_scale(double mel) { return 700.0 * (std::exp(mel / 1127.0) - 1.0); }

double MelFilterbank::apply(std::span<const float> spectrum_row, int j) const {
  const Filter& f = filters_[j];
  double sum = 0.0;
  for (size_t k = 0; k < f.weights.size(); ++k)
    sum += static_cast<double>(f.weights[k]) *
           static_cast<double>(spectrum_row[f.first_bin + k]);
  return sum;
}

MelFilterbank build_mel_filterbank(int num_filters, int sample_rate,
                                   int64_t fft_size, double low_freq,
                                   double high_freq) {
  double nyquist = sample_rate / 2.0;
  if (high_freq <= 0.0) high_freq = nyquist;
  require(num_filters >= 1, "build_mel_filterbank: need at least one filter");
  require(sample_rate > 0 && fft_size >= 2, "build_mel_filterbank: bad geometry");
  require(low_freq >= 0.0 && low_freq < high_freq,
          "build_mel_filterbank: low_freq ", low_freq, " must be below high_freq ",
          high_freq);
  require(high_freq <= nyquist, "build_mel_filterbank: high_freq ", high_freq,
          " exceeds Nyquist ", nyquist);

  double mel_low = mel_scale(low_freq);
  double mel_high = mel_scale(high_freq);
  double mel_delta = (mel_high - mel_low) / (num_filters + 1);

  MelFilterbank fb;
  fb.fft_size_ = fft_size;
  fb.sample_rate_ = sample_rate;
  fb.low_freq_ = low_freq;
  fb.high_freq_ = high_freq;
  fb.filters_.resize(num_filters);
  fb.center_freqs_.resize(num_filters);

  int64_t num_bins = fft_size / 2 + 1;
  double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(fft_size);

  for (int j = 0; j < num_filters; ++j) {
    double left = mel_low + j * mel_delta;
    double center = left + mel_delta;
    double right = center + mel_delta;
    fb.center_freqs_[j] = inverse_mel_scale(center);

    std::vector<float> weights;
    int64_t first = -1;
    for (int64_t k = 0; k < num_bins; ++k) {
      double mel = mel_scale(k * bin_hz);
      double w = 0.0;
      if (mel > left && mel < right)
        w = mel <= center ? (mel - left) / mel_delta : (right - mel) / mel_delta;
      if (w > 0.0) {
        if (first < 0) first = k;
        weights.push_back(static_cast<float>(w));
      } else if (first >= 0) {
        break;  // support is contiguous
      }
    }
    require(first >= 0, "build_mel_filterbank: filter ", j,
            " has no positive weight; too many filters for fft_size ", fft_size,
            " at ", sample_rate, " Hz");
    fb.filters_[j].first_bin = first;
    fb.filters_[j].weights = std::move(weights);
  }
  return fb;
}

namespace {

void fbank_row(const Matrix& mag, const MelFilterbank& fb, double log_floor,
               int64_t t, Matrix& out) {
  auto spec = mag.row(t);
  auto row = out.row(t);
  for (int j = 0; j < fb.num_filters(); ++j)
    row[j] = static_cast<float>(std::log(std::max(log_floor, fb.apply(spec, j))));
}

FeatureMatrix compute_fbank_impl(const SpectrumMatrix& spectrum,
                                 const MelFilterbank& fb, double log_floor,
                                 bool parallel) {
  require(spectrum.mag.cols() == fb.fft_size() / 2 + 1,
          "compute_fbank: spectrum has ", spectrum.mag.cols(),
          " bins but filterbank was built for fft_size ", fb.fft_size());
  require(log_floor > 0.0, "compute_fbank: log_floor must be positive");

  FeatureMatrix feat;
  feat.frame_rate = spectrum.frame_rate;
  feat.kind = FeatureKind::kFbank;
  feat.values = Matrix(spectrum.mag.rows(), fb.num_filters());
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int64_t t = 0; t < spectrum.mag.rows(); ++t)
      fbank_row(spectrum.mag, fb, log_floor, t, feat.values);
  } else {
    for (int64_t t = 0; t < spectrum.mag.rows(); ++t)
      fbank_row(spectrum.mag, fb, log_floor, t, feat.values);
  }
  return feat;
}

}  // namespace

FeatureMatrix compute_fbank(const SpectrumMatrix& spectrum,
                            const MelFilterbank& fb, double log_floor) {
  return compute_fbank_impl(spectrum, fb, log_floor, true);
}

namespace serial {
FeatureMatrix compute_fbank(const SpectrumMatrix& spectrum,
                            const MelFilterbank& fb, double log_floor) {
  return compute_fbank_impl(spectrum, fb, log_floor, false);
}
}  // namespace serial

FeatureMatrix mean_normalize(const FeatureMatrix& feat) {
  require(feat.values.rows() >= 1, "mean_normalize: empty feature matrix");
  FeatureMatrix out = feat;
  int64_t rows = feat.values.rows(), cols = feat.values.cols();
  for (int64_t j = 0; j < cols; ++j) {
    double sum = 0.0;
    for (int64_t t = 0; t < rows; ++t) sum += feat.values(t, j);
    float mean = static_cast<float>(sum / static_cast<double>(rows));
    for (int64_t t = 0; t < rows; ++t) out.values(t, j) = feat.values(t, j) - mean;
  }
  return out;
}

FeatureMatrix concat_features(const FeatureMatrix& a, const FeatureMatrix& b,
                              int64_t tolerance_frames) {
  require(a.utterance_id == b.utterance_id, "concat_features: utterance ids differ ('",
          a.utterance_id, "' vs '", b.utterance_id, "')");
  require(a.frame_rate == b.frame_rate, "concat_features: frame rates differ (",
          a.frame_rate, " vs ", b.frame_rate, ")");
  int64_t diff = std::abs(a.num_frames() - b.num_frames());
  require(diff <= tolerance_frames, "concat_features: frame counts ",
          a.num_frames(), " and ", b.num_frames(), " differ by ", diff,
          ", beyond tolerance ", tolerance_frames, " for utterance '",
          a.utterance_id, "'");

  int64_t rows = std::min(a.num_frames(), b.num_frames());
  FeatureMatrix out;
  out.frame_rate = a.frame_rate;
  out.utterance_id = a.utterance_id;
  out.kind = (a.kind == FeatureKind::kFbank && b.kind == FeatureKind::kPitch)
                 ? FeatureKind::kFbankPitch
                 : a.kind;
  out.values = Matrix(rows, a.dim() + b.dim());
  for (int64_t t = 0; t < rows; ++t) {
    auto row = out.values.row(t);
    auto ra = a.values.row(t);
    auto rb = b.values.row(t);
    std::copy(ra.begin(), ra.end(), row.begin());
    std::copy(rb.begin(), rb.end(), row.begin() + a.dim());
  }
  return out;
}

}  // namespace fex
