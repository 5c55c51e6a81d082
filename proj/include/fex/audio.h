// fex/audio.h

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

#ifndef FEX_AUDIO_H_
#define FEX_AUDIO_H_

#include <cstdint>
#include <string>
#include <vector>

namespace fex {

// Planar multi-channel PCM. Samples are nominally in [-1, 1]; all channels
// have the same length.
struct AudioBuffer {
  std::vector<std::vector<float>> channels;
  int sample_rate = 0;

  int num_channels() const { return static_cast<int>(channels.size()); }
  int64_t length() const {
    return channels.empty() ? 0 : static_cast<int64_t>(channels[0].size());
  }
  const std::vector<float>& mono() const;

  // Enforces the type invariants: positive rate, >= 1 channel, equal
  // channel lengths, finite samples. Throws Error on violation.
  void validate() const;
};

enum class WavEncoding { kPcm16, kFloat32 };

struct ResamplerConfig {
  int kernel_half_width = 32;  // input samples each side
  double cutoff_scale = 0.95;  // fraction of the lower Nyquist
  // The sinc kernel is Hann-tapered over the half-width.

  void validate() const;
};

AudioBuffer read_wav(const std::string& path);

// Returns the number of samples clipped into the encodable range.
int64_t write_wav(const AudioBuffer& buffer, const std::string& path,
                  WavEncoding encoding = WavEncoding::kPcm16);

// Band-limited sample rate conversion. Output length is
// round(L * out_rate / in_rate); out_rate == in_rate is an exact pass-through.
AudioBuffer resample(const AudioBuffer& buffer, int out_rate,
                     const ResamplerConfig& cfg = {});

// Windowed-sinc interpolation of `in` at positions n*step for
// n in [0, out_len); the signal is zero outside [0, len). Shared by
// resample() and speed perturbation.
std::vector<float> sinc_interpolate(const std::vector<float>& in, double step,
                                    int64_t out_len, const ResamplerConfig& cfg);

namespace serial {
AudioBuffer resample(const AudioBuffer& buffer, int out_rate,
                     const ResamplerConfig& cfg = {});
std::vector<float> sinc_interpolate(const std::vector<float>& in, double step,
                                    int64_t out_len, const ResamplerConfig& cfg);
}  // namespace serial

}  // namespace fex

#endif  // FEX_AUDIO_H_
