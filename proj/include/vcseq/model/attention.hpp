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
#include "vcseq/nn/layers.hpp"

namespace vcseq::model {

using nn::Tensor;

template <typename T>
struct AttentionStep {
  Tensor<T> energies;  // 1 x L
  Tensor<T> alpha;     // 1 x L
  Tensor<T> context;   // 1 x memory width
};

/// Hybrid content + location attention.
///
///   f     = F * alpha_prev                       (location_kernels taps)
///   e_j   = v' tanh((W1 s) o (W2 h_j) + U f_j)   multiplicative form
///   e_j   = v' tanh( W1 s  +  W2 h_j  + U f_j)   additive form
///   alpha = softmax(beta e),  c = sum_j alpha_j h_j
template <typename T>
struct Attention {
  Tensor<T> w_query;     // dec_hidden x attn_dim
  Tensor<T> w_memory;    // memory width x attn_dim
  Tensor<T> w_location;  // loc_kernels x attn_dim
  Tensor<T> v;           // attn_dim x 1
  Tensor<T> location_kernels;  // {loc_kernels, 1, loc_width}
  T beta = T(1);
  AttentionForm form = AttentionForm::kMultiplicative;

  static Attention Create(const ModelConfig& cfg, std::size_t query_width,
                          std::size_t memory_width, CounterRng& rng);

  /// alpha_prev (1 x L or L) -> L x loc_kernels.
  Tensor<T> LocationFeatures(const Tensor<T>& alpha_prev) const;
  /// Memory projection W2 h_j for every row; computed once per utterance.
  Tensor<T> Keys(const Tensor<T>& memory) const;
  /// s_prev: 1 x dec_hidden, keys: L x attn_dim, location: L x loc_kernels.
  Tensor<T> Energies(const Tensor<T>& s_prev, const Tensor<T>& keys,
                     const Tensor<T>& location) const;
  Tensor<T> Weights(const Tensor<T>& energies) const;
  Tensor<T> Context(const Tensor<T>& alpha, const Tensor<T>& memory) const;

  AttentionStep<T> Step(const Tensor<T>& s_prev, const Tensor<T>& alpha_prev,
                        const Tensor<T>& memory, const Tensor<T>& keys) const;

  void Collect(const std::string& prefix, nn::ParameterList<T>& out) const;
};

}  // namespace vcseq::model
