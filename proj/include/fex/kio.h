// fex/kio.h

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

#ifndef FEX_KIO_H_
#define FEX_KIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fex/matrix.h"

namespace fex {

// One keyed matrix in a binary archive.
struct ArchiveEntry {
  std::string key;
  FeatureMatrix matrix;
};

// Binary float-matrix archive plus plain-text byte-offset index.
// Per entry: key, ' ', 0x00, 'B', "FM ", 0x04, int32 rows, 0x04, int32 cols,
// then rows*cols little-endian float32 values in row-major order. Index
// lines are "key ark_path:offset" with offset pointing at the 0x00.
void write_archive(const std::vector<ArchiveEntry>& entries,
                   const std::string& ark_path, const std::string& scp_path);

// Reads a .scp index (seeking per line) or a .ark archive (sequential).
std::vector<ArchiveEntry> read_archive(const std::string& path);

struct WavEntry {
  std::string recording_id;
  std::string path;
  std::optional<int> channel;
};

struct SegmentRecord {
  std::string utt_id;
  std::string recording_id;
  double start = 0.0;  // seconds
  double end = 0.0;
  std::optional<int> channel;

  void validate() const;
};

// One unit of feature extraction. end < 0 means the whole recording.
struct Utterance {
  std::string utt_id;
  std::string recording_id;
  double start = 0.0;
  double end = -1.0;
  std::optional<int> channel;

  bool whole_recording() const { return end < 0.0; }
};

struct Manifest {
  std::vector<WavEntry> recordings;           // sorted by recording_id
  std::vector<SegmentRecord> segments;        // as parsed (may be empty)
  std::vector<Utterance> utterances;          // sorted by utt_id
  std::unordered_map<std::string, size_t> recording_index;

  const WavEntry& recording(const std::string& recording_id) const;
};

// wav.scp lines: "recording_id path [channel]". segments lines:
// "utt_id recording_id start end". Without a segments file every recording
// becomes one whole-file utterance.
Manifest parse_manifest(const std::string& wav_scp_path,
                        const std::optional<std::string>& segments_path = {});

// Seconds to samples at the recording's rate, round-half-away-from-zero.
int64_t seconds_to_samples(double seconds, int sample_rate);

}  // namespace fex

#endif  // FEX_KIO_H_
