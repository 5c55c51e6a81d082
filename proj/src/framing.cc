// fex/framing.cc

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

#include "fex/framing.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "fex/common.h"
#include "fex/fft.h"

namespace fex {

int64_t FramingConfig::hop_samples(int sample_rate) const {
  return round_away(sample_rate / frame_rate);
}

int64_t FramingConfig::frame_length_samples(int sample_rate) const {
  return round_away(sample_rate * frame_length_ms / 1000.0);
}

int64_t FramingConfig::effective_fft_size(int sample_rate) const {
  if (fft_size > 0) return fft_size;
  return next_power_of_two(frame_length_samples(sample_rate));
}

void FramingConfig::validate(int sample_rate) const {
  require(sample_rate > 0, "FramingConfig: sample rate must be positive");
  require(frame_rate > 0.0, "FramingConfig: frame_rate must be positive");
  require(hop_samples(sample_rate) >= 1, "FramingConfig: hop of ",
          hop_samples(sample_rate), " samples; frame_rate ", frame_rate,
          " too high for ", sample_rate, " Hz");
  require(preemphasis_coeff >= 0.0 && preemphasis_coeff < 1.0,
          "FramingConfig: preemphasis_coeff must be in [0, 1)");
  require(frame_length_samples(sample_rate) >= 1,
          "FramingConfig: frame length under one sample");
  int64_t nfft = effective_fft_size(sample_rate);
  require(is_power_of_two(nfft), "FramingConfig: fft_size ", nfft,
          " is not a power of two");
  require(frame_length_samples(sample_rate) <= nfft,
          "FramingConfig: frame length ", frame_length_samples(sample_rate),
          " exceeds fft_size ", nfft);
  require(dither_amplitude >= 0.0, "FramingConfig: negative dither_amplitude");
}

std::vector<float> preemphasize(const std::vector<float>& samples, double coeff) {
  require(coeff >= 0.0 && coeff < 1.0, "preemphasize: coeff must be in [0, 1)");
  std::vector<float> out(samples.size());
  if (samples.empty()) return out;
  out[0] = static_cast<float>(samples[0] - coeff * samples[0]);
  for (size_t n = 1; n < samples.size(); ++n)
    out[n] = static_cast<float>(samples[n] - coeff * samples[n - 1]);
  return out;
}

int64_t num_frames(int64_t num_samples, const FramingConfig& cfg, int sample_rate) {
  cfg.validate(sample_rate);
  int64_t flen = cfg.frame_length_samples(sample_rate);
  int64_t hop = cfg.hop_samples(sample_rate);
  if (cfg.snip_edges) {
    if (num_samples < flen) return 0;
    return (num_samples - flen) / hop + 1;
  }
  // Centered frames with reflection at the edges.
  return (num_samples + hop / 2) / hop;
}

std::vector<float> make_window(WindowKind kind, int64_t length) {
  std::vector<float> w(length, 1.0f);
  if (kind == WindowKind::kRectangular || length <= 1) return w;
  double denom = static_cast<double>(length - 1);
  for (int64_t n = 0; n < length; ++n) {
    double c = std::cos(2.0 * std::numbers::pi * n / denom);
    w[n] = static_cast<float>(kind == WindowKind::kHamming ? 0.54 - 0.46 * c
                                                           : 0.5 - 0.5 * c);
  }
  return w;
}

namespace {

// Sample index feeding frame position `pos` when snip_edges is false:
// frames are centered and the signal reflected at both edges.
int64_t reflect_index(int64_t pos, int64_t len) {
  if (pos < 0) pos = -pos - 1;
  if (pos >= len) pos = 2 * len - 1 - pos;
  return pos < 0 ? 0 : (pos >= len ? len - 1 : pos);
}

}  // namespace

Matrix frame_signal(const std::vector<float>& samples, int sample_rate,
                    const FramingConfig& cfg, uint64_t dither_seed) {
  cfg.validate(sample_rate);
  int64_t flen = cfg.frame_length_samples(sample_rate);
  int64_t hop = cfg.hop_samples(sample_rate);
  int64_t count = num_frames(static_cast<int64_t>(samples.size()), cfg, sample_rate);
  Matrix frames(count, flen);
  for (int64_t i = 0; i < count; ++i) {
    auto row = frames.row(i);
    if (cfg.snip_edges) {
      int64_t start = i * hop;
      for (int64_t j = 0; j < flen; ++j) row[j] = samples[start + j];
    } else {
      int64_t start = i * hop + hop / 2 - flen / 2;
      for (int64_t j = 0; j < flen; ++j)
        row[j] = samples[reflect_index(start + j, static_cast<int64_t>(samples.size()))];
    }
    if (cfg.dither_amplitude > 0.0) {
      Rng rng(mix64(dither_seed ^ static_cast<uint64_t>(i)));
      for (int64_t j = 0; j < flen; ++j)
        row[j] += static_cast<float>(cfg.dither_amplitude * rng.next_signed());
    }
  }
  return frames;
}

namespace {

void spectrum_row(const Matrix& frames, const std::vector<float>& window,
                  const Fft& fft, int64_t i, Matrix& out,
                  std::vector<std::complex<double>>& scratch) {
  int64_t nfft = fft.size();
  auto frame = frames.row(i);
  for (size_t j = 0; j < frame.size(); ++j)
    scratch[j] = {static_cast<double>(frame[j]) * window[j], 0.0};
  for (size_t j = frame.size(); j < static_cast<size_t>(nfft); ++j)
    scratch[j] = {0.0, 0.0};
  fft.forward(scratch.data());
  auto row = out.row(i);
  for (int64_t k = 0; k <= nfft / 2; ++k)
    row[k] = static_cast<float>(std::abs(scratch[k]));
}

SpectrumMatrix window_and_spectrum_impl(const Matrix& frames, int sample_rate,
                                        const FramingConfig& cfg, bool parallel) {
  cfg.validate(sample_rate);
  int64_t nfft = cfg.effective_fft_size(sample_rate);
  require(frames.cols() <= nfft, "window_and_spectrum: frame length ",
          frames.cols(), " exceeds fft_size ", nfft);
  std::vector<float> window = make_window(cfg.window, frames.cols());
  Fft fft(nfft);

  SpectrumMatrix out;
  out.frame_rate = cfg.frame_rate;
  out.fft_size = nfft;
  out.mag = Matrix(frames.rows(), nfft / 2 + 1);

  if (parallel) {
#pragma omp parallel
    {
      std::vector<std::complex<double>> scratch(nfft);
#pragma omp for schedule(static)
      for (int64_t i = 0; i < frames.rows(); ++i)
        spectrum_row(frames, window, fft, i, out.mag, scratch);
    }
  } else {
    std::vector<std::complex<double>> scratch(nfft);
    for (int64_t i = 0; i < frames.rows(); ++i)
      spectrum_row(frames, window, fft, i, out.mag, scratch);
  }
  return out;
}

}  // namespace

SpectrumMatrix window_and_spectrum(const Matrix& frames, int sample_rate,
                                   const FramingConfig& cfg) {
  return window_and_spectrum_impl(frames, sample_rate, cfg, true);
}

namespace serial {
SpectrumMatrix window_and_spectrum(const Matrix& frames, int sample_rate,
                                   const FramingConfig& cfg) {
  return window_and_spectrum_impl(frames, sample_rate, cfg, false);
}
}  // namespace serial

}  // namespace fex
