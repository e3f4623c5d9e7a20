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

#include "vcseq/pipeline/convert.hpp"

#include "vcseq/autodiff/ops.hpp"
#include "vcseq/common/error.hpp"
#include "vcseq/dsp/griffin_lim.hpp"
#include "vcseq/dsp/resample.hpp"

namespace vcseq::pipeline {

Converter::Converter(const Checkpoint& ckpt)
    : config_(ckpt.config),
      stats_(ckpt.stats),
      model_(RestoreModel(ckpt)),
      fb_(dsp::BuildMelFilterbank(ckpt.config.audio)) {}

Conversion Converter::DecodeMel(const dsp::MelSpectrogram& source, const ConvertOptions& opts) const {
  if (source.n_frames() == 0) throw ArgumentError("source has no frames");
  if (source.n_mels() != config_.audio.n_mels) throw ShapeError("source mel width does not match model");
  const ad::NoGradScope no_grad;
  const nn::Context ctx{ad::Mode::kInfer, nullptr};
  const auto pad = static_cast<float>(dsp::SilenceValue(stats_));
  const auto memory = model_.encoder.Encode(
      ad::Tensor<float>::FromData({source.n_frames(), source.n_mels()}, source.frames.data), pad, ctx);
  const std::size_t max_steps =
      opts.max_steps > 0 ? opts.max_steps
                         : model::DefaultMaxSteps(memory.length(), config_.infer.max_steps_factor);
  model::StopConfig stop{config_.infer.silence_threshold, config_.infer.silence_frames};
  if (!opts.stop_on_silence) stop.silence_frames = 0;
  const auto decoded = model_.decoder.DecodeFreeRunning(memory, max_steps, stop, ctx);
  if (decoded.steps() == 0) throw Error("decoder produced no frames");

  Conversion out;
  out.stopped_by = decoded.stopped_by;
  out.mel.sample_rate = config_.audio.sample_rate;
  out.mel.frames = dsp::Matrix<float>(decoded.frames.rows(), decoded.frames.cols());
  std::copy(decoded.frames.data().begin(), decoded.frames.data().end(), out.mel.frames.data.begin());
  out.alignment = dsp::Matrix<float>(decoded.alignment.rows(), decoded.alignment.cols());
  std::copy(decoded.alignment.data().begin(), decoded.alignment.data().end(),
            out.alignment.data.begin());
  return out;
}

Conversion Converter::Convert(const dsp::AudioBuffer& input, const ConvertOptions& opts) const {
  const std::uint32_t model_rate = config_.audio.sample_rate;
  const dsp::AudioBuffer at_model_rate =
      input.sample_rate == model_rate ? input : dsp::Resample(input, model_rate);
  const dsp::FrameParams params = dsp::FrameParamsFrom(config_.audio);
  const dsp::MelSpectrogram source = dsp::ComputeMelSpectrogram(at_model_rate, fb_, params, stats_);
  Conversion out = DecodeMel(source, opts);

  const dsp::LinearSpectrogram linear = dsp::MelToLinear(out.mel, fb_, params, stats_);
  dsp::GriffinLimResult gl = dsp::GriffinLim(linear, config_.infer.gl_iters, model_rate);
  out.audio = input.sample_rate == model_rate ? std::move(gl.audio)
                                              : dsp::Resample(gl.audio, input.sample_rate);
  return out;
}

}  // namespace vcseq::pipeline
