// fex/pitch.h

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

#ifndef FEX_PITCH_H_
#define FEX_PITCH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fex/matrix.h"

namespace fex {

struct PitchConfig {
  double f_min = 50.0;
  double f_max = 400.0;
  double nccf_floor = 1e-4;
  double transition_weight = 0.35;
  // Short-lag preference added to the per-frame cost, weight on
  // ln(lag/lag_min). Without it every integer multiple of a tone's period
  // scores NCCF ~ 1 and the tracker falls to subharmonics.
  double lag_cost_weight = 0.01;
  int delta_window = 2;  // frames each side for the delta regression

  int64_t min_lag(int sample_rate) const;  // ceil(sample_rate / f_max)
  int64_t max_lag(int sample_rate) const;  // floor(sample_rate / f_min)
  void validate(int sample_rate, int64_t frame_length) const;
};

struct PitchTrack {
  std::vector<float> f0;               // Hz, always in [f_min, f_max]
  std::vector<float> pov;              // [0, 1]
  std::vector<float> delta_log_pitch;  // per-frame slope of ln f0
  double frame_rate = 0.0;

  int64_t num_frames() const { return static_cast<int64_t>(f0.size()); }
};

// NCCF(tau) = sum x[n]x[n+tau] / sqrt((sum x[n]^2 + floor)(sum x[n+tau]^2 + floor)),
// sums over the overlap n in [0, len - tau). One score per lag in
// [min_lag, max_lag].
std::vector<float> compute_nccf(std::span<const float> frame, int64_t min_lag,
                                int64_t max_lag, double nccf_floor);

// Viterbi lag tracking over per-frame NCCF scores. Frames must come from
// frame_signal with the same geometry as the companion FBANK extraction.
PitchTrack track_pitch(const Matrix& frames, const PitchConfig& cfg,
                       int sample_rate, double frame_rate);

// T x 3 matrix with columns [ln f0, delta_log_pitch, pov].
FeatureMatrix pitch_features(const PitchTrack& track);

namespace serial {
PitchTrack track_pitch(const Matrix& frames, const PitchConfig& cfg,
                       int sample_rate, double frame_rate);
}  // namespace serial

}  // namespace fex

#endif  // FEX_PITCH_H_
