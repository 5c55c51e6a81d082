// fex/pitch.cc

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

#include "fex/pitch.h"

#include <algorithm>
#include <cmath>

#include "fex/common.h"

namespace fex {

int64_t PitchConfig::min_lag(int sample_rate) const {
  return static_cast<int64_t>(std::ceil(sample_rate / f_max));
}

int64_t PitchConfig::max_lag(int sample_rate) const {
  return static_cast<int64_t>(std::floor(sample_rate / f_min));
}

void PitchConfig::validate(int sample_rate, int64_t frame_length) const {
  require(sample_rate > 0, "PitchConfig: sample rate must be positive");
  require(f_min > 0.0 && f_min < f_max && f_max < sample_rate / 2.0,
          "PitchConfig: need 0 < f_min < f_max < Nyquist, got [", f_min, ", ",
          f_max, "] at ", sample_rate, " Hz");
  require(min_lag(sample_rate) <= max_lag(sample_rate),
          "PitchConfig: empty lag range");
  require(frame_length > max_lag(sample_rate), "PitchConfig: frame length ",
          frame_length, " must exceed max lag ", max_lag(sample_rate),
          " (lower the frame rate's frame length or raise f_min)");
  require(nccf_floor > 0.0, "PitchConfig: nccf_floor must be positive");
  require(transition_weight >= 0.0, "PitchConfig: negative transition_weight");
  require(lag_cost_weight >= 0.0, "PitchConfig: negative lag_cost_weight");
  require(delta_window >= 1, "PitchConfig: delta_window must be >= 1");
}

std::vector<float> compute_nccf(std::span<const float> frame, int64_t min_lag,
                                int64_t max_lag, double nccf_floor) {
  require(min_lag >= 1 && min_lag <= max_lag, "compute_nccf: empty lag range [",
          min_lag, ", ", max_lag, "]");
  int64_t len = static_cast<int64_t>(frame.size());
  require(len > max_lag, "compute_nccf: frame of ", len,
          " samples not longer than max lag ", max_lag);

  std::vector<float> scores(max_lag - min_lag + 1);
  // Prefix sums of x^2 make the per-lag energies O(1).
  std::vector<double> energy(len + 1, 0.0);
  for (int64_t n = 0; n < len; ++n)
    energy[n + 1] = energy[n] + static_cast<double>(frame[n]) * frame[n];

  for (int64_t lag = min_lag; lag <= max_lag; ++lag) {
    int64_t overlap = len - lag;
    double num = 0.0;
    for (int64_t n = 0; n < overlap; ++n)
      num += static_cast<double>(frame[n]) * frame[n + lag];
    double e1 = energy[overlap];
    double e2 = energy[len] - energy[lag];
    scores[lag - min_lag] =
        static_cast<float>(num / std::sqrt((e1 + nccf_floor) * (e2 + nccf_floor)));
  }
  return scores;
}

namespace {

// Viterbi over lag states. Local cost: -NCCF(lag) + lag_cost_weight*ln(lag/min_lag);
// transition cost: transition_weight * |ln(lag/prev_lag)|. The transition
// cost is a metric in log-lag, so min over predecessors is an exact
// distance transform: two linear sweeps per frame instead of a states^2 scan.
std::vector<int64_t> viterbi_lags(const Matrix& nccf, int64_t min_lag,
                                  const PitchConfig& cfg) {
  int64_t frames = nccf.rows();
  int64_t states = nccf.cols();
  std::vector<int64_t> path(frames, 0);
  if (frames == 0) return path;

  std::vector<double> log_lag(states);
  for (int64_t s = 0; s < states; ++s)
    log_lag[s] = std::log(static_cast<double>(min_lag + s));
  double tw = cfg.transition_weight;

  std::vector<double> local(states);
  auto local_cost = [&](int64_t t) {
    for (int64_t s = 0; s < states; ++s)
      local[s] = -static_cast<double>(nccf(t, s)) +
                 cfg.lag_cost_weight * (log_lag[s] - log_lag[0]);
  };

  std::vector<double> cost(states), fwd(states), bwd(states);
  std::vector<int32_t> arg_fwd(states), arg_bwd(states);
  std::vector<int32_t> back(frames * states, 0);

  local_cost(0);
  cost = local;

  for (int64_t t = 1; t < frames; ++t) {
    // fwd[s]: min over prev <= s of cost[prev] + tw*(log_lag[s] - log_lag[prev]).
    fwd[0] = cost[0];
    arg_fwd[0] = 0;
    for (int64_t s = 1; s < states; ++s) {
      double carried = fwd[s - 1] + tw * (log_lag[s] - log_lag[s - 1]);
      if (cost[s] <= carried) {
        fwd[s] = cost[s];
        arg_fwd[s] = static_cast<int32_t>(s);
      } else {
        fwd[s] = carried;
        arg_fwd[s] = arg_fwd[s - 1];
      }
    }
    // bwd[s]: same for prev >= s.
    bwd[states - 1] = cost[states - 1];
    arg_bwd[states - 1] = static_cast<int32_t>(states - 1);
    for (int64_t s = states - 2; s >= 0; --s) {
      double carried = bwd[s + 1] + tw * (log_lag[s + 1] - log_lag[s]);
      if (cost[s] <= carried) {
        bwd[s] = cost[s];
        arg_bwd[s] = static_cast<int32_t>(s);
      } else {
        bwd[s] = carried;
        arg_bwd[s] = arg_bwd[s + 1];
      }
    }
    local_cost(t);
    for (int64_t s = 0; s < states; ++s) {
      double best = fwd[s];
      int32_t best_prev = arg_fwd[s];
      if (bwd[s] < best) {
        best = bwd[s];
        best_prev = arg_bwd[s];
      }
      cost[s] = best + local[s];
      back[t * states + s] = best_prev;
    }
  }

  int64_t best_state = 0;
  for (int64_t s = 1; s < states; ++s)
    if (cost[s] < cost[best_state]) best_state = s;
  path[frames - 1] = best_state;
  for (int64_t t = frames - 1; t > 0; --t)
    path[t - 1] = back[t * states + path[t]];
  return path;
}

// Least-squares slope of values over indices [t - w, t + w], indices clamped
// to the track (the standard delta-feature convention).
std::vector<float> regression_slope(const std::vector<float>& values, int w) {
  int64_t n = static_cast<int64_t>(values.size());
  std::vector<float> slope(n, 0.0f);
  double denom = 0.0;
  for (int j = 1; j <= w; ++j) denom += 2.0 * j * j;
  for (int64_t t = 0; t < n; ++t) {
    double num = 0.0;
    for (int j = 1; j <= w; ++j) {
      int64_t lo = std::max<int64_t>(0, t - j);
      int64_t hi = std::min<int64_t>(n - 1, t + j);
      num += j * (static_cast<double>(values[hi]) - values[lo]);
    }
    slope[t] = static_cast<float>(num / denom);
  }
  return slope;
}

PitchTrack track_pitch_impl(const Matrix& frames, const PitchConfig& cfg,
                            int sample_rate, double frame_rate, bool parallel) {
  if (frames.rows() == 0) {
    PitchTrack empty;
    empty.frame_rate = frame_rate;
    return empty;
  }
  cfg.validate(sample_rate, frames.cols());
  int64_t min_lag = cfg.min_lag(sample_rate);
  int64_t max_lag = cfg.max_lag(sample_rate);
  int64_t states = max_lag - min_lag + 1;
  int64_t count = frames.rows();

  Matrix nccf(count, states);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int64_t t = 0; t < count; ++t) {
      auto scores = compute_nccf(frames.row(t), min_lag, max_lag, cfg.nccf_floor);
      std::copy(scores.begin(), scores.end(), nccf.row(t).begin());
    }
  } else {
    for (int64_t t = 0; t < count; ++t) {
      auto scores = compute_nccf(frames.row(t), min_lag, max_lag, cfg.nccf_floor);
      std::copy(scores.begin(), scores.end(), nccf.row(t).begin());
    }
  }

  std::vector<int64_t> path = viterbi_lags(nccf, min_lag, cfg);

  PitchTrack track;
  track.frame_rate = frame_rate;
  track.f0.resize(count);
  track.pov.resize(count);
  std::vector<float> log_f0(count);
  for (int64_t t = 0; t < count; ++t) {
    int64_t lag = min_lag + path[t];
    track.f0[t] = static_cast<float>(static_cast<double>(sample_rate) / lag);
    auto row = nccf.row(t);
    float peak = *std::max_element(row.begin(), row.end());
    track.pov[t] = std::clamp(peak, 0.0f, 1.0f);
    log_f0[t] = std::log(track.f0[t]);
  }
  track.delta_log_pitch = regression_slope(log_f0, cfg.delta_window);
  return track;
}

}  // namespace

PitchTrack track_pitch(const Matrix& frames, const PitchConfig& cfg,
                       int sample_rate, double frame_rate) {
  return track_pitch_impl(frames, cfg, sample_rate, frame_rate, true);
}

namespace serial {
PitchTrack track_pitch(const Matrix& frames, const PitchConfig& cfg,
                       int sample_rate, double frame_rate) {
  return track_pitch_impl(frames, cfg, sample_rate, frame_rate, false);
}
}  // namespace serial

FeatureMatrix pitch_features(const PitchTrack& track) {
  FeatureMatrix feat;
  feat.frame_rate = track.frame_rate;
  feat.kind = FeatureKind::kPitch;
  feat.values = Matrix(track.num_frames(), 3);
  for (int64_t t = 0; t < track.num_frames(); ++t) {
    auto row = feat.values.row(t);
    row[0] = std::log(track.f0[t]);
    row[1] = track.delta_log_pitch[t];
    row[2] = track.pov[t];
  }
  return feat;
}

}  // namespace fex
