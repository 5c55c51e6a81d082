// fex/augment.cc

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

#include "fex/augment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "fex/common.h"

namespace fex {

void SpeedPerturbSpec::validate() const {
  require(!speeds.empty(), "SpeedPerturbSpec: no speeds");
  std::set<double> seen;
  for (double s : speeds) {
    require(s > 0.0, "SpeedPerturbSpec: speed must be positive, got ", s);
    require(seen.insert(s).second, "SpeedPerturbSpec: duplicate speed ", s);
  }
}

std::string SpeedPerturbSpec::perturbed_id(const std::string& id, double s) const {
  if (s == 1.0) return id;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", s);
  return prefix + buf + "-" + id;
}

namespace {

AudioBuffer perturb_speed_impl(const AudioBuffer& buffer, double s,
                               const ResamplerConfig& cfg, bool parallel) {
  buffer.validate();
  require(s > 0.0, "perturb_speed: speed must be positive, got ", s);
  if (s == 1.0) return buffer;

  int64_t out_len = round_away(static_cast<double>(buffer.length()) / s);
  AudioBuffer out;
  out.sample_rate = buffer.sample_rate;
  out.channels.reserve(buffer.channels.size());
  for (const auto& ch : buffer.channels)
    out.channels.push_back(parallel ? sinc_interpolate(ch, s, out_len, cfg)
                                    : serial::sinc_interpolate(ch, s, out_len, cfg));
  return out;
}

}  // namespace

AudioBuffer perturb_speed(const AudioBuffer& buffer, double s,
                          const ResamplerConfig& cfg) {
  return perturb_speed_impl(buffer, s, cfg, true);
}

namespace serial {
AudioBuffer perturb_speed(const AudioBuffer& buffer, double s,
                          const ResamplerConfig& cfg) {
  return perturb_speed_impl(buffer, s, cfg, false);
}
}  // namespace serial

std::vector<SegmentRecord> rescale_segments(const std::vector<SegmentRecord>& segments,
                                            double s) {
  require(s > 0.0, "rescale_segments: speed must be positive, got ", s);
  std::vector<SegmentRecord> out = segments;
  for (auto& seg : out) {
    seg.validate();
    seg.start /= s;
    seg.end /= s;
  }
  return out;
}

AugmentResult augment_manifest(const std::vector<WavEntry>& wav_entries,
                               const std::vector<SegmentRecord>& segments,
                               const SpeedPerturbSpec& spec,
                               const std::string& output_dir) {
  spec.validate();
  AugmentResult result;
  result.wav_entries = wav_entries;
  result.segments = segments;

  std::set<std::string> recording_ids;
  for (const auto& e : wav_entries)
    require(recording_ids.insert(e.recording_id).second,
            "augment_manifest: duplicate recording id '", e.recording_id, "'");

  // Generated ids must not collide with existing ones or each other.
  std::set<std::string> utt_ids;
  for (const auto& s : segments) utt_ids.insert(s.utt_id);
  for (double s : spec.speeds) {
    if (s == 1.0) continue;
    for (const auto& e : wav_entries)
      require(recording_ids.insert(spec.perturbed_id(e.recording_id, s)).second,
              "augment_manifest: generated recording id '",
              spec.perturbed_id(e.recording_id, s), "' collides");
    for (const auto& seg : segments)
      require(utt_ids.insert(spec.perturbed_id(seg.utt_id, s)).second,
              "augment_manifest: generated utterance id '",
              spec.perturbed_id(seg.utt_id, s), "' collides");
  }

  bool any_copies = std::any_of(spec.speeds.begin(), spec.speeds.end(),
                                [](double s) { return s != 1.0; });
  if (any_copies) {
    std::error_code ec;
    std::filesystem::create_directories(output_dir, ec);
    require(!ec, "augment_manifest: cannot create output dir '", output_dir,
            "': ", ec.message());
  }

  for (const auto& entry : wav_entries) {
    for (double s : spec.speeds) {
      if (s == 1.0) continue;
      std::string new_id = spec.perturbed_id(entry.recording_id, s);
      std::string out_path =
          (std::filesystem::path(output_dir) / (new_id + ".wav")).string();
      try {
        AudioBuffer audio = read_wav(entry.path);
        AudioBuffer warped = perturb_speed(audio, s, spec.resampler);
        write_wav(warped, out_path, WavEncoding::kPcm16);
      } catch (const std::exception& e) {
        result.failures.push_back(std::string(e.what()));
        continue;
      }
      WavEntry copy;
      copy.recording_id = new_id;
      copy.path = out_path;
      copy.channel = entry.channel;
      result.wav_entries.push_back(std::move(copy));
    }
  }

  for (double s : spec.speeds) {
    if (s == 1.0) continue;
    std::vector<SegmentRecord> scaled = rescale_segments(segments, s);
    for (auto& seg : scaled) {
      seg.utt_id = spec.perturbed_id(seg.utt_id, s);
      seg.recording_id = spec.perturbed_id(seg.recording_id, s);
      result.segments.push_back(std::move(seg));
    }
  }

  std::sort(result.wav_entries.begin(), result.wav_entries.end(),
            [](const WavEntry& a, const WavEntry& b) {
              return a.recording_id < b.recording_id;
            });
  std::sort(result.segments.begin(), result.segments.end(),
            [](const SegmentRecord& a, const SegmentRecord& b) {
              return a.utt_id < b.utt_id;
            });
  return result;
}

}  // namespace fex
