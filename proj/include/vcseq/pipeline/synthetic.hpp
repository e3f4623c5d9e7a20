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

#include "vcseq/dsp/audio.hpp"

namespace vcseq::pipeline {

enum class SyntheticStyle {
  /// A few harmonic "syllables" with gliding pitch, a slowly wandering
  /// envelope and light breath noise.
  kSpeechLike,
  /// Two or three steady tones, each amplitude-modulated by its own
  /// low-passed noise.
  kModulatedTones,
};

/// The script seed fixes timing, melody and envelope; `pitch_factor` scales
/// every frequency, so two voices reading one script differ only in pitch.
/// Both styles fade in and out over 50 ms.
struct SyntheticScript {
  std::uint64_t seed = 0;
  double min_seconds = 0.5;
  double max_seconds = 1.0;
  SyntheticStyle style = SyntheticStyle::kSpeechLike;
};

dsp::AudioBuffer SynthesizeUtterance(const SyntheticScript& script, double pitch_factor = 1.0,
                                     std::uint32_t sample_rate = 22050);

struct SyntheticCorpus {
  std::size_t count = 4;
  std::uint64_t seed = 0;
  double pitch_factor = 1.0;
  std::uint32_t sample_rate = 22050;
  double min_seconds = 0.5;
  double max_seconds = 1.0;
  SyntheticStyle style = SyntheticStyle::kSpeechLike;
};

/// Writes `<dir>/wav/<id>.wav` for ids utt0000.. and `<dir>/manifest.txt`.
/// Returns the manifest path.
std::string WriteSyntheticCorpus(const std::string& dir, const SyntheticCorpus& corpus);

std::string SyntheticId(std::size_t index);

}  // namespace vcseq::pipeline
