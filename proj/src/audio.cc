// fex/audio.cc

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

#include "fex/audio.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "fex/common.h"

namespace fex {

const std::vector<float>& AudioBuffer::mono() const {
  require(num_channels() == 1, "expected mono audio, got ", num_channels(),
          " channels");
  return channels[0];
}

void AudioBuffer::validate() const {
  require(sample_rate > 0, "AudioBuffer: sample_rate must be positive, got ",
          sample_rate);
  require(!channels.empty(), "AudioBuffer: no channels");
  size_t len = channels[0].size();
  for (size_t c = 0; c < channels.size(); ++c) {
    require(channels[c].size() == len, "AudioBuffer: channel ", c, " has ",
            channels[c].size(), " samples, channel 0 has ", len);
    for (float v : channels[c])
      require(std::isfinite(v), "AudioBuffer: non-finite sample in channel ", c);
  }
}

void ResamplerConfig::validate() const {
  require(kernel_half_width >= 4, "ResamplerConfig: kernel_half_width must be >= 4");
  require(cutoff_scale > 0.0 && cutoff_scale <= 1.0,
          "ResamplerConfig: cutoff_scale must be in (0, 1]");
}

namespace {

// ---- little-endian byte I/O -------------------------------------------------

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | p[1] << 8);
}

void put_u32(std::string& out, uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

float f32_from_bits(uint32_t bits) {
  float f;
  std::memcpy(&f, &bits, 4);
  return f;
}

uint32_t bits_from_f32(float f) {
  uint32_t bits;
  std::memcpy(&bits, &f, 4);
  return bits;
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatIeeeFloat = 3;

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "read_wav: cannot open '", path, "'");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const uint8_t* p = reinterpret_cast<const uint8_t*>(bytes.data());
  size_t n = bytes.size();

  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
    raise("read_wav: malformed header in '", path, "' at byte offset 0");

  uint16_t format = 0, num_channels = 0, bits_per_sample = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  size_t data_offset = 0, data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= n) {
    const uint8_t* chunk = p + pos;
    uint32_t chunk_size = read_u32(chunk + 4);
    size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (body + chunk_size > n || chunk_size < 16)
        raise("read_wav: malformed header in '", path, "' at byte offset ", pos);
      format = read_u16(p + body);
      num_channels = read_u16(p + body + 2);
      sample_rate = read_u32(p + body + 4);
      bits_per_sample = read_u16(p + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + chunk_size > n)
        raise("read_wav: truncated data chunk in '", path, "': chunk of ",
              chunk_size, " bytes at byte offset ", body, " exceeds file size ", n);
      data_offset = body;
      data_size = chunk_size;
      break;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  require(have_fmt && data_offset != 0, "read_wav: malformed header in '", path,
          "': missing fmt or data chunk");
  require(num_channels >= 1, "read_wav: malformed header in '", path,
          "': zero channels");
  require(sample_rate >= 1, "read_wav: malformed header in '", path,
          "': zero sample rate");

  bool pcm16 = format == kFormatPcm && bits_per_sample == 16;
  bool float32 = format == kFormatIeeeFloat && bits_per_sample == 32;
  if (!pcm16 && !float32)
    raise("read_wav: unsupported codec in '", path, "' (format tag ", format,
          ", ", bits_per_sample, " bits) at byte offset ", data_offset - 8);

  size_t bytes_per_sample = bits_per_sample / 8;
  size_t frame_bytes = bytes_per_sample * num_channels;
  if (data_size % frame_bytes != 0)
    raise("read_wav: truncated data chunk in '", path, "': ", data_size,
          " bytes is not a whole number of ", frame_bytes,
          "-byte frames, at byte offset ", data_offset);
  size_t num_frames = data_size / frame_bytes;

  AudioBuffer buf;
  buf.sample_rate = static_cast<int>(sample_rate);
  buf.channels.assign(num_channels, std::vector<float>(num_frames));
  const uint8_t* d = p + data_offset;
  for (size_t i = 0; i < num_frames; ++i) {
    for (int c = 0; c < num_channels; ++c) {
      const uint8_t* s = d + (i * num_channels + c) * bytes_per_sample;
      if (pcm16) {
        int16_t v = static_cast<int16_t>(read_u16(s));
        buf.channels[c][i] = static_cast<float>(v) / 32768.0f;
      } else {
        buf.channels[c][i] = f32_from_bits(read_u32(s));
      }
    }
  }
  return buf;
}

int64_t write_wav(const AudioBuffer& buffer, const std::string& path,
                  WavEncoding encoding) {
  buffer.validate();
  int channels = buffer.num_channels();
  int64_t frames = buffer.length();
  bool pcm16 = encoding == WavEncoding::kPcm16;
  uint16_t bits = pcm16 ? 16 : 32;
  uint32_t byte_rate = static_cast<uint32_t>(buffer.sample_rate) * channels * bits / 8;
  uint16_t block_align = static_cast<uint16_t>(channels * bits / 8);
  uint32_t data_size = static_cast<uint32_t>(frames * block_align);

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  put_u32(out, 36 + data_size);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, pcm16 ? kFormatPcm : kFormatIeeeFloat);
  put_u16(out, static_cast<uint16_t>(channels));
  put_u32(out, static_cast<uint32_t>(buffer.sample_rate));
  put_u32(out, byte_rate);
  put_u16(out, block_align);
  put_u16(out, bits);
  out += "data";
  put_u32(out, data_size);

  int64_t clipped = 0;
  for (int64_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      float v = buffer.channels[c][i];
      if (pcm16) {
        long q = std::lround(static_cast<double>(v) * 32768.0);
        if (q > 32767) { q = 32767; ++clipped; }
        if (q < -32768) { q = -32768; ++clipped; }
        put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(q)));
      } else {
        put_u32(out, bits_from_f32(v));
      }
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(os), "write_wav: cannot open '", path, "' for writing");
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  require(static_cast<bool>(os), "write_wav: I/O failure writing '", path, "'");
  return clipped;
}

// ---- band-limited interpolation --------------------------------------------

namespace {

struct InterpPlan {
  double step;
  double cutoff;  // relative to input Nyquist
  int half_width;
  int64_t in_len;
};

// One output sample: Hann-windowed sinc taps around pos = n * step,
// normalized to unit DC gain, signal zero outside [0, in_len).
inline float interp_sample(const float* in, const InterpPlan& plan, int64_t n) {
  double pos = static_cast<double>(n) * plan.step;
  int64_t base = static_cast<int64_t>(std::floor(pos));
  int hw = plan.half_width;
  double w = plan.cutoff;
  double acc = 0.0;
  double tap_sum = 0.0;
  for (int64_t j = base - hw + 1; j <= base + hw; ++j) {
    double arg = static_cast<double>(j) - pos;
    double x = w * arg;
    double sinc = x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    double taper = 0.5 + 0.5 * std::cos(std::numbers::pi * arg / hw);
    double tap = w * sinc * taper;
    tap_sum += tap;
    if (j >= 0 && j < plan.in_len) acc += tap * static_cast<double>(in[j]);
  }
  return static_cast<float>(acc / tap_sum);
}

std::vector<float> sinc_interpolate_impl(const std::vector<float>& in, double step,
                                         int64_t out_len, const ResamplerConfig& cfg,
                                         bool parallel) {
  cfg.validate();
  require(step > 0.0, "sinc_interpolate: step must be positive");
  InterpPlan plan{step, cfg.cutoff_scale * std::min(1.0, 1.0 / step),
                  cfg.kernel_half_width, static_cast<int64_t>(in.size())};
  std::vector<float> out(out_len);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int64_t n = 0; n < out_len; ++n)
      out[n] = interp_sample(in.data(), plan, n);
  } else {
    for (int64_t n = 0; n < out_len; ++n)
      out[n] = interp_sample(in.data(), plan, n);
  }
  return out;
}

AudioBuffer resample_impl(const AudioBuffer& buffer, int out_rate,
                          const ResamplerConfig& cfg, bool parallel) {
  buffer.validate();
  require(out_rate > 0, "resample: out_rate must be positive, got ", out_rate);
  if (out_rate == buffer.sample_rate) return buffer;

  double step = static_cast<double>(buffer.sample_rate) / out_rate;
  int64_t out_len = round_away(static_cast<double>(buffer.length()) * out_rate /
                               buffer.sample_rate);
  AudioBuffer out;
  out.sample_rate = out_rate;
  out.channels.reserve(buffer.channels.size());
  for (const auto& ch : buffer.channels)
    out.channels.push_back(sinc_interpolate_impl(ch, step, out_len, cfg, parallel));
  return out;
}

}  // namespace

std::vector<float> sinc_interpolate(const std::vector<float>& in, double step,
                                    int64_t out_len, const ResamplerConfig& cfg) {
  return sinc_interpolate_impl(in, step, out_len, cfg, true);
}

AudioBuffer resample(const AudioBuffer& buffer, int out_rate,
                     const ResamplerConfig& cfg) {
  return resample_impl(buffer, out_rate, cfg, true);
}

namespace serial {

std::vector<float> sinc_interpolate(const std::vector<float>& in, double step,
                                    int64_t out_len, const ResamplerConfig& cfg) {
  return sinc_interpolate_impl(in, step, out_len, cfg, false);
}

AudioBuffer resample(const AudioBuffer& buffer, int out_rate,
                     const ResamplerConfig& cfg) {
  return resample_impl(buffer, out_rate, cfg, false);
}

}  // namespace serial

}  // namespace fex
