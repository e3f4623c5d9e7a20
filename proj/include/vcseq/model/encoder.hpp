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
#include <vector>

#include "vcseq/config.hpp"
#include "vcseq/nn/layers.hpp"

namespace vcseq::model {

using nn::Context;
using nn::Tensor;

/// Attention memory: one row per group of four (padded) input frames.
template <typename T>
struct EncoderMemory {
  Tensor<T> h;                    // L x 2*enc_hidden
  std::size_t source_frames = 0;  // input length before padding
  std::size_t length() const { return h.defined() ? h.rows() : 0; }
};

/// Concatenates neighbouring frame pairs: row i = [x[2i], x[2i+1]].
template <typename T>
Tensor<T> PyramidReduce(const Tensor<T>& x);

/// Input length rounded up to a multiple of the total time reduction.
std::size_t PaddedLength(std::size_t frames);
inline constexpr std::size_t kTimeReduction = 4;

template <typename T>
struct Encoder {
  nn::Prenet<T> prenet;
  nn::ConvBank<T> bank;
  std::vector<nn::Highway<T>> highways;
  nn::BiGru<T> gru0;  // no reduction
  nn::BiGru<T> gru1;
  nn::BiGru<T> gru2;

  static Encoder Create(const ModelConfig& cfg, std::size_t n_mels, CounterRng& rng);

  /// Prenet + convolution bank + highway stack (T x n_mels -> T x n_mels).
  Tensor<T> FrontEnd(const Tensor<T>& mel, const Context& ctx) const;

  /// `pad_value` fills the frames appended to reach a multiple of four.
  EncoderMemory<T> Encode(const Tensor<T>& mel, T pad_value, const Context& ctx) const;

  /// Encodes a batch. Sequences are independent except that batchnorm
  /// statistics are shared across them in train mode. `ctxs` holds one
  /// context per sequence so each gets its own dropout stream.
  std::vector<EncoderMemory<T>> EncodeBatch(const std::vector<Tensor<T>>& mels, T pad_value,
                                            const std::vector<Context>& ctxs) const;

  std::size_t memory_width() const { return 2 * gru2.forward.hidden_size(); }
  void Collect(const std::string& prefix, nn::ParameterList<T>& out) const;
};

}  // namespace vcseq::model
