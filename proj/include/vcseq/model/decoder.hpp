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
#include <string>

#include "vcseq/config.hpp"
#include "vcseq/model/attention.hpp"
#include "vcseq/model/encoder.hpp"
#include "vcseq/nn/layers.hpp"

namespace vcseq::model {

using nn::Context;
using nn::Tensor;

template <typename T>
struct DecoderState {
  Tensor<T> attn_h;      // 1 x dec_hidden, s_{i-1}
  // Each residual GRU carries its own output forward; the residual sum only
  // feeds the layer above.
  Tensor<T> dec1_h;      // 1 x dec_hidden
  Tensor<T> dec2_h;      // 1 x dec_hidden
  Tensor<T> alpha_prev;  // 1 x L
  Tensor<T> y_prev;      // 1 x n_mels
};

template <typename T>
struct AttentionRnnOutput {
  Tensor<T> s;        // new attention-RNN state
  Tensor<T> alpha;
  Tensor<T> context;
  Tensor<T> energies;
};

template <typename T>
struct ResidualOutput {
  Tensor<T> rnn1_out;
  Tensor<T> g1;  // rnn1_out + s
  Tensor<T> rnn2_out;
  Tensor<T> g2;  // rnn2_out + g1
};

enum class StopReason { kMaxSteps, kSilence, kTargetLength };

template <typename T>
struct DecodeResult {
  Tensor<T> frames;     // N x n_mels
  Tensor<T> alignment;  // N x L
  StopReason stopped_by = StopReason::kTargetLength;
  std::size_t steps() const { return frames.defined() ? frames.rows() : 0; }
};

struct StopConfig {
  double silence_threshold = 0.02;
  std::size_t silence_frames = 15;
};

/// Initial projection bias: the middle of the normalized mel range.
inline constexpr double kProjectionBiasInit = 0.5;

/// Decoder step budget for a memory of `memory_length` rows.
std::size_t DefaultMaxSteps(std::size_t memory_length, double max_steps_factor);

template <typename T>
struct Decoder {
  nn::Prenet<T> prenet;
  Attention<T> attention;
  nn::GruCell<T> attn_rnn;
  nn::GruCell<T> rnn1;
  nn::GruCell<T> rnn2;
  nn::Linear<T> projection;

  static Decoder Create(const ModelConfig& cfg, std::size_t n_mels, std::size_t memory_width,
                        CounterRng& rng);

  std::size_t n_mels() const { return projection.out(); }
  std::size_t hidden() const { return rnn1.hidden_size(); }

  /// Zero states, attention on memory row 0, zero go-frame.
  DecoderState<T> InitialState(std::size_t memory_length) const;

  AttentionRnnOutput<T> AttentionRnnStep(const DecoderState<T>& state, const Tensor<T>& memory,
                                         const Tensor<T>& keys, const Context& ctx) const;
  ResidualOutput<T> ResidualStep(const Tensor<T>& s, const DecoderState<T>& state) const;
  /// relu(g2 W + b).
  Tensor<T> ProjectFrame(const Tensor<T>& g2) const;

  /// Runs one full step, writes the successor state, returns the emitted frame.
  Tensor<T> Step(DecoderState<T>& state, const Tensor<T>& memory, const Tensor<T>& keys,
                 const Context& ctx, Tensor<T>* alpha_out = nullptr) const;

  /// y_prev at step i is target row i-1 (zeros at i = 0).
  DecodeResult<T> DecodeTeacherForced(const EncoderMemory<T>& memory, const Tensor<T>& target,
                                      const Context& ctx) const;
  DecodeResult<T> DecodeFreeRunning(const EncoderMemory<T>& memory, std::size_t max_steps,
                                    const StopConfig& stop, const Context& ctx) const;

  void Collect(const std::string& prefix, nn::ParameterList<T>& out) const;
};

}  // namespace vcseq::model
