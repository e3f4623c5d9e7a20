// Copyright 2026 The vcseq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcseq/dsp/audio.hpp"

#include <cmath>
#include <string>

#include <spdlog/spdlog.h>

#include "vcseq/common/bytes.hpp"
#include "vcseq/common/error.hpp"

namespace vcseq::dsp {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

struct Format {
  std::uint16_t code = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

Format ParseFmt(ByteReader r, std::uint32_t size) {
  if (size < 16) throw FormatError("fmt chunk too short");
  Format f;
  f.code = r.Get<std::uint16_t>();
  f.channels = r.Get<std::uint16_t>();
  f.rate = r.Get<std::uint32_t>();
  r.Get<std::uint32_t>();  // byte rate
  f.block_align = r.Get<std::uint16_t>();
  f.bits = r.Get<std::uint16_t>();
  if (f.code == kFormatExtensible) {
    if (size < 40) throw FormatError("extensible fmt chunk too short");
    r.Skip(2 + 2 + 4);  // cbSize, valid bits, channel mask
    f.code = r.Get<std::uint16_t>();  // leading bytes of the subformat GUID
  }
  if (f.channels == 0) throw FormatError("zero channels");
  if (f.rate == 0) throw FormatError("zero sample rate");
  return f;
}

}  // namespace

AudioBuffer DecodeWav(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 12) throw FormatError("file too short for a RIFF header");
  if (r.GetString(4) != "RIFF") throw FormatError("missing RIFF magic");
  r.Get<std::uint32_t>();
  if (r.GetString(4) != "WAVE") throw FormatError("missing WAVE magic");

  Format fmt;
  bool have_fmt = false;
  while (r.remaining() >= 8) {
    const std::string id = r.GetString(4);
    const auto size = r.Get<std::uint32_t>();
    if (id == "fmt ") {
      if (size > r.remaining()) throw FormatError("truncated fmt chunk");
      fmt = ParseFmt(ByteReader(r.cursor(), size), size);
      have_fmt = true;
      r.Skip(size + (size & 1u));
      continue;
    }
    if (id != "data") {
      if (size > r.remaining()) throw FormatError("truncated chunk '" + id + "'");
      r.Skip(std::min<std::size_t>(size + (size & 1u), r.remaining()));
      continue;
    }
    if (!have_fmt) throw FormatError("data chunk before fmt chunk");
    if (size > r.remaining()) throw FormatError("truncated data chunk");

    const bool pcm16 = fmt.code == kFormatPcm && fmt.bits == 16;
    const bool f32 = fmt.code == kFormatFloat && fmt.bits == 32;
    if (!pcm16 && !f32) {
      throw UnsupportedError("unsupported wav encoding: format " + std::to_string(fmt.code) +
                             ", " + std::to_string(fmt.bits) + " bits");
    }
    const std::size_t width = fmt.bits / 8;
    if (fmt.block_align != width * fmt.channels) throw FormatError("inconsistent block align");
    if (size % fmt.block_align != 0) throw FormatError("data chunk holds a partial frame");

    AudioBuffer out;
    out.sample_rate = fmt.rate;
    const std::size_t frames = size / fmt.block_align;
    out.samples.resize(frames);
    ByteReader d(r.cursor(), size);
    for (std::size_t i = 0; i < frames; ++i) {
      double acc = 0.0;
      for (std::size_t c = 0; c < fmt.channels; ++c) {
        const double v = pcm16 ? d.Get<std::int16_t>() / 32768.0 : d.Get<float>();
        if (!std::isfinite(v)) throw FormatError("non-finite sample");
        acc += v;
      }
      out.samples[i] = acc / fmt.channels;
    }
    return out;
  }
  throw FormatError(have_fmt ? "missing data chunk" : "missing fmt chunk");
}

AudioBuffer LoadWav(const std::string& path) {
  try {
    return DecodeWav(ReadFileBytes(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  } catch (const UnsupportedError& e) {
    throw UnsupportedError(path + ": " + e.what());
  }
}

std::int16_t QuantizePcm16(double sample) {
  const double scaled = std::nearbyint(sample * 32768.0);
  if (scaled > 32767.0) return 32767;
  if (scaled < -32768.0) return -32768;
  return static_cast<std::int16_t>(scaled);
}

std::vector<std::uint8_t> EncodeWav(const AudioBuffer& audio, std::size_t* clipped) {
  if (audio.sample_rate == 0) throw ArgumentError("sample rate must be positive");
  const auto data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
  ByteWriter w;
  w.PutString("RIFF");
  w.Put<std::uint32_t>(36 + data_bytes);
  w.PutString("WAVE");
  w.PutString("fmt ");
  w.Put<std::uint32_t>(16);
  w.Put<std::uint16_t>(kFormatPcm);
  w.Put<std::uint16_t>(1);
  w.Put<std::uint32_t>(audio.sample_rate);
  w.Put<std::uint32_t>(audio.sample_rate * 2);
  w.Put<std::uint16_t>(2);
  w.Put<std::uint16_t>(16);
  w.PutString("data");
  w.Put<std::uint32_t>(data_bytes);
  std::size_t n_clipped = 0;
  for (double s : audio.samples) {
    if (!std::isfinite(s)) throw ArgumentError("cannot write non-finite samples");
    if (s > 1.0 || s < -1.0) ++n_clipped;
    w.Put<std::int16_t>(QuantizePcm16(s));
  }
  if (clipped) *clipped = n_clipped;
  return std::move(w.bytes());
}

std::size_t SaveWav(const AudioBuffer& audio, const std::string& path) {
  std::size_t clipped = 0;
  WriteFileBytes(path, EncodeWav(audio, &clipped));
  if (clipped > 0) spdlog::warn("{}: {} samples clipped to [-1, 1]", path, clipped);
  return clipped;
}

}  // namespace vcseq::dsp
