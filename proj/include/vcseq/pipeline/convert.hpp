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

#include "vcseq/dsp/audio.hpp"
#include "vcseq/dsp/mel.hpp"
#include "vcseq/model/decoder.hpp"
#include "vcseq/model/seq2seq.hpp"
#include "vcseq/pipeline/checkpoint.hpp"

namespace vcseq::pipeline {

struct ConvertOptions {
  std::size_t max_steps = 0;  // 0: derived from infer.max_steps_factor
  bool stop_on_silence = true;
};

struct Conversion {
  dsp::MelSpectrogram mel;        // normalized, as decoded
  dsp::Matrix<float> alignment;   // decoder steps x encoder steps
  dsp::AudioBuffer audio;         // at the input's sample rate
  model::StopReason stopped_by = model::StopReason::kMaxSteps;
};

/// Inference-mode mapping from a normalized source mel to a normalized
/// target mel plus its attention alignment.
class Converter {
 public:
  explicit Converter(const Checkpoint& ckpt);

  Conversion DecodeMel(const dsp::MelSpectrogram& source, const ConvertOptions& opts = {}) const;
  /// Resamples to the model rate if needed, converts, vocodes with
  /// Griffin-Lim and resamples back to the input rate.
  Conversion Convert(const dsp::AudioBuffer& input, const ConvertOptions& opts = {}) const;

  const Config& config() const { return config_; }
  const dsp::MelStats& stats() const { return stats_; }
  const model::Seq2Seq<float>& model() const { return model_; }

 private:
  Config config_;
  dsp::MelStats stats_;
  model::Seq2Seq<float> model_;
  dsp::MelFilterbank fb_;
};

}  // namespace vcseq::pipeline
