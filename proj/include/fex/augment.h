// fex/augment.h

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

#ifndef FEX_AUGMENT_H_
#define FEX_AUGMENT_H_

#include <string>
#include <vector>

#include "fex/audio.h"
#include "fex/kio.h"

namespace fex {

// Speed factors for perturbed training copies. s is the playback-speed
// multiplier: duration scales by 1/s and every frequency by s.
struct SpeedPerturbSpec {
  std::vector<double> speeds = {0.9, 1.0, 1.1};
  std::string prefix = "sp";
  ResamplerConfig resampler;

  void validate() const;
  // "sp0.9-utt1" style id for a perturbed copy; s == 1.0 keeps the original id.
  std::string perturbed_id(const std::string& id, double s) const;
};

// New signal of length round(L/s) at the original sample rate, interpolated
// at input times n*s. A sine at f Hz comes out at s*f Hz.
AudioBuffer perturb_speed(const AudioBuffer& buffer, double s,
                          const ResamplerConfig& cfg = {});

// start/s, end/s for every record; ordering among records is preserved.
std::vector<SegmentRecord> rescale_segments(const std::vector<SegmentRecord>& segments,
                                            double s);

struct AugmentResult {
  std::vector<WavEntry> wav_entries;       // originals + perturbed copies, sorted
  std::vector<SegmentRecord> segments;     // rescaled copies included, sorted
  std::vector<std::string> failures;       // per-recording error messages
};

// Writes perturbed WAVs for every speed != 1.0 into output_dir and returns
// the combined manifest. Failures are collected per recording; successful
// copies are kept.
AugmentResult augment_manifest(const std::vector<WavEntry>& wav_entries,
                               const std::vector<SegmentRecord>& segments,
                               const SpeedPerturbSpec& spec,
                               const std::string& output_dir);

namespace serial {
AudioBuffer perturb_speed(const AudioBuffer& buffer, double s,
                          const ResamplerConfig& cfg = {});
}  // namespace serial

}  // namespace fex

#endif  // FEX_AUGMENT_H_
