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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace vcseq::dsp {

struct AudioBuffer {
  std::vector<double> samples;  // mono, nominally in [-1, 1]
  std::uint32_t sample_rate = 22050;

  std::size_t size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

/// Reads a RIFF/WAVE file holding PCM16 or IEEE float32 samples. Multi-channel
/// input is averaged down to mono; PCM16 is scaled by 1/32768.
AudioBuffer LoadWav(const std::string& path);
AudioBuffer DecodeWav(const std::vector<std::uint8_t>& bytes);

/// Writes mono PCM16. Samples outside [-1, 1] saturate; the number of clipped
/// samples is returned (and logged when non-zero).
std::size_t SaveWav(const AudioBuffer& audio, const std::string& path);
std::vector<std::uint8_t> EncodeWav(const AudioBuffer& audio, std::size_t* clipped = nullptr);

/// Saturating quantizer used by the writer.
std::int16_t QuantizePcm16(double sample);

}  // namespace vcseq::dsp
