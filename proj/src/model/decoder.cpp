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

#include "vcseq/model/decoder.hpp"

#include <cmath>

#include "vcseq/common/error.hpp"

namespace vcseq::model {

using ad::Add;
using ad::Concat;
using ad::Slice;

std::size_t DefaultMaxSteps(std::size_t memory_length, double max_steps_factor) {
  const double steps =
      std::ceil(max_steps_factor * static_cast<double>(memory_length * kTimeReduction));
  return steps < 1.0 ? 1 : static_cast<std::size_t>(steps);
}

template <typename T>
Decoder<T> Decoder<T>::Create(const ModelConfig& cfg, std::size_t n_mels,
                              std::size_t memory_width, CounterRng& rng) {
  Decoder dec;
  const std::size_t h = cfg.dec_hidden;
  auto prenet_rng = rng.Split("prenet");
  dec.prenet = nn::Prenet<T>::Create(n_mels, cfg.dec_prenet, static_cast<T>(cfg.prenet_dropout),
                                     prenet_rng);
  auto att_rng = rng.Split("attention");
  dec.attention = Attention<T>::Create(cfg, h, memory_width, att_rng);
  const std::size_t prenet_out = cfg.dec_prenet.empty() ? n_mels : cfg.dec_prenet.back();
  auto a_rng = rng.Split("attn_rnn");
  auto r1_rng = rng.Split("rnn1");
  auto r2_rng = rng.Split("rnn2");
  auto p_rng = rng.Split("projection");
  dec.attn_rnn = nn::GruCell<T>::Create(memory_width + prenet_out, h, a_rng);
  dec.rnn1 = nn::GruCell<T>::Create(h, h, r1_rng);
  dec.rnn2 = nn::GruCell<T>::Create(h, h, r2_rng);
  dec.projection = nn::Linear<T>::Create(h, n_mels, p_rng);
  // Outputs start mid-range. With a zero bias the slowly varying decoder
  // state leaves a quarter of the ReLU outputs dead from the first step.
  for (T& b : dec.projection.bias.mutable_data()) b = static_cast<T>(kProjectionBiasInit);
  return dec;
}

template <typename T>
DecoderState<T> Decoder<T>::InitialState(std::size_t memory_length) const {
  if (memory_length == 0) throw ArgumentError("decoder needs a non-empty encoder memory");
  DecoderState<T> state;
  state.attn_h = Tensor<T>::Zeros({1, hidden()});
  state.dec1_h = Tensor<T>::Zeros({1, hidden()});
  state.dec2_h = Tensor<T>::Zeros({1, hidden()});
  state.alpha_prev = Tensor<T>::Zeros({1, memory_length});
  state.alpha_prev.mutable_data()[0] = T(1);
  state.y_prev = Tensor<T>::Zeros({1, n_mels()});
  return state;
}

template <typename T>
AttentionRnnOutput<T> Decoder<T>::AttentionRnnStep(const DecoderState<T>& state,
                                                   const Tensor<T>& memory,
                                                   const Tensor<T>& keys,
                                                   const Context& ctx) const {
  const auto att = attention.Step(state.attn_h, state.alpha_prev, memory, keys);
  const auto conditioned = prenet.Forward(state.y_prev, ctx);
  AttentionRnnOutput<T> out;
  out.s = attn_rnn.Step(Concat<T>({att.context, conditioned}, 1), state.attn_h);
  out.alpha = att.alpha;
  out.context = att.context;
  out.energies = att.energies;
  return out;
}

template <typename T>
ResidualOutput<T> Decoder<T>::ResidualStep(const Tensor<T>& s, const DecoderState<T>& state) const {
  if (s.size() != hidden()) {
    throw ShapeError("residual decoder expects width " + std::to_string(hidden()) + ", got " +
                     ad::ShapeString(s.shape()));
  }
  ResidualOutput<T> out;
  out.rnn1_out = rnn1.Step(s, state.dec1_h);
  out.g1 = Add(out.rnn1_out, s);
  out.rnn2_out = rnn2.Step(out.g1, state.dec2_h);
  out.g2 = Add(out.rnn2_out, out.g1);
  return out;
}

template <typename T>
Tensor<T> Decoder<T>::ProjectFrame(const Tensor<T>& g2) const {
  if (g2.size() != hidden()) {
    throw ShapeError("projection expects width " + std::to_string(hidden()) + ", got " +
                     ad::ShapeString(g2.shape()));
  }
  return ad::Relu(projection.Forward(g2));
}

template <typename T>
Tensor<T> Decoder<T>::Step(DecoderState<T>& state, const Tensor<T>& memory,
                           const Tensor<T>& keys, const Context& ctx,
                           Tensor<T>* alpha_out) const {
  auto att = AttentionRnnStep(state, memory, keys, ctx);
  auto res = ResidualStep(att.s, state);
  auto frame = ProjectFrame(res.g2);
  state.attn_h = att.s;
  state.dec1_h = res.rnn1_out;
  state.dec2_h = res.rnn2_out;
  state.alpha_prev = att.alpha;
  state.y_prev = frame;
  if (alpha_out != nullptr) *alpha_out = att.alpha;
  return frame;
}

template <typename T>
DecodeResult<T> Decoder<T>::DecodeTeacherForced(const EncoderMemory<T>& memory,
                                                const Tensor<T>& target,
                                                const Context& ctx) const {
  if (target.rank() != 2 || target.rows() == 0) {
    throw ArgumentError("teacher-forced decoding needs a non-empty target");
  }
  if (target.cols() != n_mels()) {
    throw ShapeError("target width " + std::to_string(target.cols()) + " != " +
                     std::to_string(n_mels()));
  }
  const std::size_t steps = target.rows();
  const auto keys = attention.Keys(memory.h);
  auto state = InitialState(memory.length());
  std::vector<Tensor<T>> frames;
  std::vector<Tensor<T>> alphas;
  frames.reserve(steps);
  alphas.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    Tensor<T> alpha;
    frames.push_back(Step(state, memory.h, keys, ctx, &alpha));
    alphas.push_back(alpha.Detach());
    state.y_prev = Slice(target, 0, i, i + 1).Detach();
  }
  DecodeResult<T> result;
  result.frames = Concat(frames, 0);
  result.alignment = Concat(alphas, 0);
  result.stopped_by = StopReason::kTargetLength;
  return result;
}

template <typename T>
DecodeResult<T> Decoder<T>::DecodeFreeRunning(const EncoderMemory<T>& memory,
                                              std::size_t max_steps, const StopConfig& stop,
                                              const Context& ctx) const {
  if (max_steps == 0) throw ArgumentError("max_steps must be at least 1");
  const auto keys = attention.Keys(memory.h);
  auto state = InitialState(memory.length());
  std::vector<Tensor<T>> frames;
  std::vector<Tensor<T>> alphas;
  DecodeResult<T> result;
  result.stopped_by = StopReason::kMaxSteps;
  std::size_t quiet_run = 0;
  for (std::size_t i = 0; i < max_steps; ++i) {
    Tensor<T> alpha;
    auto frame = Step(state, memory.h, keys, ctx, &alpha);
    frames.push_back(frame);
    alphas.push_back(alpha.Detach());
    double mean = 0.0;
    for (T v : frame.data()) mean += static_cast<double>(v);
    mean /= static_cast<double>(frame.size());
    quiet_run = mean < stop.silence_threshold ? quiet_run + 1 : 0;
    if (stop.silence_frames > 0 && quiet_run >= stop.silence_frames) {
      result.stopped_by = StopReason::kSilence;
      break;
    }
  }
  result.frames = Concat(frames, 0);
  result.alignment = Concat(alphas, 0);
  return result;
}

template <typename T>
void Decoder<T>::Collect(const std::string& prefix, nn::ParameterList<T>& out) const {
  prenet.Collect(prefix + ".prenet", out);
  attention.Collect(prefix + ".attention", out);
  attn_rnn.Collect(prefix + ".attn_rnn", out);
  rnn1.Collect(prefix + ".rnn1", out);
  rnn2.Collect(prefix + ".rnn2", out);
  projection.Collect(prefix + ".projection", out);
}

template struct Decoder<float>;
template struct Decoder<double>;

}  // namespace vcseq::model
