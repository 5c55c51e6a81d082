// fex/kio.cc

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

#include "fex/kio.h"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "fex/common.h"

namespace fex {

namespace {

constexpr char kBinaryFlag[] = {'\0', 'B'};
constexpr char kFloatMatrixMagic[] = "FM ";

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (c == '\0' || std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

void put_i32_le(std::string& out, int32_t v) {
  uint32_t u = static_cast<uint32_t>(v);
  out.push_back(static_cast<char>(u & 0xff));
  out.push_back(static_cast<char>((u >> 8) & 0xff));
  out.push_back(static_cast<char>((u >> 16) & 0xff));
  out.push_back(static_cast<char>((u >> 24) & 0xff));
}

void put_f32_le(std::string& out, float f) {
  uint32_t u;
  std::memcpy(&u, &f, 4);
  out.push_back(static_cast<char>(u & 0xff));
  out.push_back(static_cast<char>((u >> 8) & 0xff));
  out.push_back(static_cast<char>((u >> 16) & 0xff));
  out.push_back(static_cast<char>((u >> 24) & 0xff));
}

class ByteReader {
 public:
  ByteReader(std::string bytes, std::string name)
      : bytes_(std::move(bytes)), name_(std::move(name)) {}

  size_t pos() const { return pos_; }
  size_t size() const { return bytes_.size(); }
  bool at_end() const { return pos_ >= bytes_.size(); }
  void seek(size_t pos) { pos_ = pos; }

  uint8_t u8() {
    check_avail(1, "byte");
    return static_cast<uint8_t>(bytes_[pos_++]);
  }

  int32_t i32_le() {
    check_avail(4, "int32");
    uint32_t u = 0;
    for (int i = 0; i < 4; ++i)
      u |= static_cast<uint32_t>(static_cast<uint8_t>(bytes_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return static_cast<int32_t>(u);
  }

  float f32_le() {
    int32_t i = i32_le();
    float f;
    std::memcpy(&f, &i, 4);
    return f;
  }

  std::string token_until_space() {
    std::string tok;
    while (!at_end() && bytes_[pos_] != ' ') tok.push_back(bytes_[pos_++]);
    check_avail(1, "key terminator");
    ++pos_;  // the space
    return tok;
  }

  void check_avail(size_t n, const char* what) {
    if (pos_ + n > bytes_.size())
      raise("read_archive: truncated payload in '", name_, "': needed ", n,
            " byte(s) for ", what, " at byte offset ", pos_);
  }

  const std::string& name() const { return name_; }

 private:
  std::string bytes_;
  std::string name_;
  size_t pos_ = 0;
};

// Header after the key+space: 0x00 'B' "FM " 0x04 rows 0x04 cols.
// `header_offset` is the position of the 0x00 byte.
FeatureMatrix read_matrix_body(ByteReader& r) {
  size_t header_offset = r.pos();
  uint8_t b0 = r.u8();
  uint8_t b1 = r.u8();
  if (b0 != 0x00 || b1 != 'B')
    raise("read_archive: bad magic bytes in '", r.name(), "' at byte offset ",
          header_offset, " (expected binary marker 0x00 'B')");
  char magic[3];
  for (int i = 0; i < 3; ++i) magic[i] = static_cast<char>(r.u8());
  if (std::memcmp(magic, "DM ", 3) == 0)
    raise("read_archive: double-precision matrix ('DM') in '", r.name(),
          "' at byte offset ", header_offset + 2,
          "; only single-precision 'FM' archives are supported");
  if (std::memcmp(magic, "CM ", 3) == 0 || std::memcmp(magic, "CM2", 3) == 0)
    raise("read_archive: compressed matrix in '", r.name(), "' at byte offset ",
          header_offset + 2, "; only single-precision 'FM' archives are supported");
  if (std::memcmp(magic, kFloatMatrixMagic, 3) != 0)
    raise("read_archive: bad magic bytes in '", r.name(), "' at byte offset ",
          header_offset + 2);

  if (r.u8() != 0x04)
    raise("read_archive: bad magic bytes in '", r.name(), "' at byte offset ",
          r.pos() - 1, " (expected int32 size marker)");
  int32_t rows = r.i32_le();
  if (r.u8() != 0x04)
    raise("read_archive: bad magic bytes in '", r.name(), "' at byte offset ",
          r.pos() - 1, " (expected int32 size marker)");
  int32_t cols = r.i32_le();

  if (rows <= 0 || cols <= 0 ||
      static_cast<int64_t>(rows) * cols > (int64_t{1} << 31))
    raise("read_archive: shape overflow in '", r.name(), "': ", rows, "x", cols,
          " at byte offset ", header_offset);
  size_t need = static_cast<size_t>(rows) * static_cast<size_t>(cols) * 4;
  if (r.pos() + need > r.size())
    raise("read_archive: truncated payload in '", r.name(), "': matrix of ",
          rows, "x", cols, " needs ", need, " bytes at byte offset ", r.pos(),
          " but only ", r.size() - r.pos(), " remain");

  FeatureMatrix m;
  m.values = Matrix(rows, cols);
  for (int64_t i = 0; i < static_cast<int64_t>(rows) * cols; ++i)
    m.values.data()[i] = r.f32_le();
  return m;
}

std::string slurp(const std::string& path, const char* op) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), op, ": cannot open '", path, "'");
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

void SegmentRecord::validate() const {
  require(valid_key(utt_id) && valid_key(recording_id),
          "SegmentRecord: ids must be non-empty without whitespace (utt '",
          utt_id, "', recording '", recording_id, "')");
  require(start >= 0.0 && start < end, "SegmentRecord '", utt_id,
          "': need 0 <= start < end, got [", start, ", ", end, "]");
}

void write_archive(const std::vector<ArchiveEntry>& entries,
                   const std::string& ark_path, const std::string& scp_path) {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    require(valid_key(e.key),
            "write_archive: invalid key '", e.key,
            "' (must be non-empty, no whitespace or NUL)");
    require(seen.insert(e.key).second, "write_archive: duplicate key '", e.key, "'");
    require(e.matrix.values.rows() >= 1 && e.matrix.values.cols() >= 1,
            "write_archive: key '", e.key, "' has empty matrix ",
            e.matrix.values.rows(), "x", e.matrix.values.cols());
  }

  std::string ark;
  std::string scp;
  for (const auto& e : entries) {
    ark += e.key;
    ark += ' ';
    scp += e.key;
    scp += ' ';
    scp += ark_path;
    scp += ':';
    scp += std::to_string(ark.size());  // offset of the 0x00 that follows
    scp += '\n';
    ark.append(kBinaryFlag, 2);
    ark += kFloatMatrixMagic;
    ark.push_back(0x04);
    put_i32_le(ark, static_cast<int32_t>(e.matrix.values.rows()));
    ark.push_back(0x04);
    put_i32_le(ark, static_cast<int32_t>(e.matrix.values.cols()));
    for (float v : e.matrix.values.values()) put_f32_le(ark, v);
  }

  std::ofstream ark_out(ark_path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(ark_out), "write_archive: cannot open '", ark_path, "'");
  ark_out.write(ark.data(), static_cast<std::streamsize>(ark.size()));
  require(static_cast<bool>(ark_out), "write_archive: I/O failure on '", ark_path, "'");
  ark_out.close();

  std::ofstream scp_out(scp_path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(scp_out), "write_archive: cannot open '", scp_path, "'");
  scp_out.write(scp.data(), static_cast<std::streamsize>(scp.size()));
  require(static_cast<bool>(scp_out), "write_archive: I/O failure on '", scp_path, "'");
}

std::vector<ArchiveEntry> read_archive(const std::string& path) {
  std::vector<ArchiveEntry> entries;
  if (ends_with(path, ".scp")) {
    std::string text = slurp(path, "read_archive");
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    // ark payloads cached per file, read once
    std::unordered_map<std::string, std::shared_ptr<ByteReader>> readers;
    while (std::getline(lines, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = split_ws(line);
      require(fields.size() == 2, "read_archive: '", path, "' line ", lineno,
              ": expected 'key ark:offset'");
      size_t colon = fields[1].rfind(':');
      require(colon != std::string::npos, "read_archive: '", path, "' line ",
              lineno, ": missing ':offset'");
      std::string ark_file = fields[1].substr(0, colon);
      size_t offset = 0;
      try {
        offset = std::stoull(fields[1].substr(colon + 1));
      } catch (const std::exception&) {
        raise("read_archive: '", path, "' line ", lineno, ": bad offset");
      }
      auto it = readers.find(ark_file);
      if (it == readers.end())
        it = readers
                 .emplace(ark_file, std::make_shared<ByteReader>(
                                        slurp(ark_file, "read_archive"), ark_file))
                 .first;
      ByteReader& r = *it->second;
      require(offset <= r.size(), "read_archive: '", path, "' line ", lineno,
              ": offset ", offset, " beyond archive size ", r.size());
      r.seek(offset);
      ArchiveEntry e;
      e.key = fields[0];
      e.matrix = read_matrix_body(r);
      e.matrix.utterance_id = e.key;
      entries.push_back(std::move(e));
    }
    return entries;
  }

  ByteReader r(slurp(path, "read_archive"), path);
  while (!r.at_end()) {
    ArchiveEntry e;
    e.key = r.token_until_space();
    require(valid_key(e.key), "read_archive: invalid key at byte offset ",
            r.pos() - e.key.size() - 1, " in '", path, "'");
    e.matrix = read_matrix_body(r);
    e.matrix.utterance_id = e.key;
    entries.push_back(std::move(e));
  }
  return entries;
}

const WavEntry& Manifest::recording(const std::string& recording_id) const {
  auto it = recording_index.find(recording_id);
  require(it != recording_index.end(), "Manifest: unknown recording '",
          recording_id, "'");
  return recordings[it->second];
}

Manifest parse_manifest(const std::string& wav_scp_path,
                        const std::optional<std::string>& segments_path) {
  Manifest m;
  {
    std::string text = slurp(wav_scp_path, "parse_manifest");
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = split_ws(line);
      require(fields.size() == 2 || fields.size() == 3, "parse_manifest: '",
              wav_scp_path, "' line ", lineno,
              ": expected 'recording_id path [channel]'");
      WavEntry e;
      e.recording_id = fields[0];
      e.path = fields[1];
      if (fields.size() == 3) {
        try {
          e.channel = std::stoi(fields[2]);
        } catch (const std::exception&) {
          raise("parse_manifest: '", wav_scp_path, "' line ", lineno,
                ": bad channel '", fields[2], "'");
        }
      }
      require(valid_key(e.recording_id), "parse_manifest: '", wav_scp_path,
              "' line ", lineno, ": invalid recording id");
      m.recordings.push_back(std::move(e));
    }
  }
  std::sort(m.recordings.begin(), m.recordings.end(),
            [](const WavEntry& a, const WavEntry& b) {
              return a.recording_id < b.recording_id;
            });
  for (size_t i = 0; i < m.recordings.size(); ++i) {
    auto [it, inserted] = m.recording_index.emplace(m.recordings[i].recording_id, i);
    require(inserted, "parse_manifest: duplicate recording id '",
            m.recordings[i].recording_id, "' in '", wav_scp_path, "'");
  }

  std::set<std::string> utt_ids;
  if (segments_path) {
    std::string text = slurp(*segments_path, "parse_manifest");
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fields = split_ws(line);
      require(fields.size() == 4, "parse_manifest: '", *segments_path, "' line ",
              lineno, ": expected 'utt_id recording_id start end'");
      SegmentRecord s;
      s.utt_id = fields[0];
      s.recording_id = fields[1];
      try {
        size_t used = 0;
        s.start = std::stod(fields[2], &used);
        require(used == fields[2].size(), "trailing junk");
        s.end = std::stod(fields[3], &used);
        require(used == fields[3].size(), "trailing junk");
      } catch (const std::exception&) {
        raise("parse_manifest: '", *segments_path, "' line ", lineno,
              ": non-numeric start/end time");
      }
      require(s.start >= 0.0 && s.start < s.end, "parse_manifest: '",
              *segments_path, "' line ", lineno, ": inverted or negative times [",
              s.start, ", ", s.end, "] for utterance '", s.utt_id, "'");
      s.validate();
      require(m.recording_index.count(s.recording_id) > 0, "parse_manifest: '",
              *segments_path, "' line ", lineno, ": segment '", s.utt_id,
              "' references unknown recording '", s.recording_id, "'");
      require(utt_ids.insert(s.utt_id).second, "parse_manifest: '",
              *segments_path, "' line ", lineno, ": duplicate utterance id '",
              s.utt_id, "'");
      m.segments.push_back(s);
      Utterance u;
      u.utt_id = s.utt_id;
      u.recording_id = s.recording_id;
      u.start = s.start;
      u.end = s.end;
      u.channel = s.channel;
      m.utterances.push_back(std::move(u));
    }
  } else {
    for (const auto& rec : m.recordings) {
      Utterance u;
      u.utt_id = rec.recording_id;
      u.recording_id = rec.recording_id;
      u.channel = rec.channel;
      m.utterances.push_back(std::move(u));
    }
  }
  std::sort(m.utterances.begin(), m.utterances.end(),
            [](const Utterance& a, const Utterance& b) { return a.utt_id < b.utt_id; });
  return m;
}

int64_t seconds_to_samples(double seconds, int sample_rate) {
  return round_away(seconds * sample_rate);
}

}  // namespace fex
