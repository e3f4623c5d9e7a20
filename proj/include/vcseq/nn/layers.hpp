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

#include "vcseq/autodiff/ops.hpp"
#include "vcseq/autodiff/parameters.hpp"
#include "vcseq/common/rng.hpp"

namespace vcseq::nn {

using ad::Mode;
using ad::ParameterList;
using ad::Tensor;

/// Per-forward-pass settings shared by every layer.
struct Context {
  Mode mode = Mode::kInfer;
  CounterRng* rng = nullptr;  // required when mode == kTrain and dropout is active
};

/// Uniform in +-sqrt(6 / (fan_in + fan_out)).
template <typename T>
Tensor<T> XavierUniform(const ad::Shape& shape, std::size_t fan_in, std::size_t fan_out,
                        CounterRng& rng);

template <typename T>
struct Linear {
  Tensor<T> weight;  // in x out
  Tensor<T> bias;    // out, undefined when the layer has no bias

  static Linear Create(std::size_t in, std::size_t out, CounterRng& rng, bool with_bias = true);
  Tensor<T> Forward(const Tensor<T>& x) const;
  void Collect(const std::string& prefix, ParameterList<T>& out) const;
  std::size_t in() const { return weight.dim(0); }
  std::size_t out() const { return weight.dim(1); }
};

/// Stack of linear -> relu -> dropout bottleneck layers.
template <typename T>
struct Prenet {
  std::vector<Linear<T>> layers;
  T dropout = T(0.5);

  static Prenet Create(std::size_t in, const std::vector<std::size_t>& sizes, T dropout,
                       CounterRng& rng);
  Tensor<T> Forward(const Tensor<T>& x, const Context& ctx) const;
  void Collect(const std::string& prefix, ParameterList<T>& out) const;
};

/// Reset-before-candidate GRU:
///   z = sigmoid(x Wz + h Uz + bz), r = sigmoid(x Wr + h Ur + br)
///   c = tanh(x Wh + (r * h) Uh + bh), h' = (1 - z) * h + z * c
/// Input weights for the three gates are packed column-wise as [z | r | h].
template <typename T>
struct GruCell {
  Tensor<T> w_input;   // in x 3H
  Tensor<T> u_gates;   // H x 2H, recurrent weights of z and r
  Tensor<T> u_cand;    // H x H, recurrent weights of the candidate
  Tensor<T> bias;      // 3H

  static GruCell Create(std::size_t in, std::size_t hidden, CounterRng& rng);
  std::size_t input_size() const { return w_input.dim(0); }
  std::size_t hidden_size() const { return u_cand.dim(0); }

  /// Input projection x W + b for a whole (T x in) sequence.
  Tensor<T> ProjectInput(const Tensor<T>& x) const;
  /// One step given a 1 x 3H row of ProjectInput output.
  Tensor<T> StepProjected(const Tensor<T>& projected, const Tensor<T>& h_prev) const;
  Tensor<T> Step(const Tensor<T>& x, const Tensor<T>& h_prev) const;
  /// Runs over a T x in sequence from a zero state; returns T x H.
  Tensor<T> Run(const Tensor<T>& x, bool reverse = false) const;
  void Collect(const std::string& prefix, ParameterList<T>& out) const;
};

template <typename T>
struct BiGru {
  GruCell<T> forward;
  GruCell<T> backward;

  static BiGru Create(std::size_t in, std::size_t hidden, CounterRng& rng);
  /// T x in -> T x 2H, forward half first.
  Tensor<T> Forward(const Tensor<T>& x) const;
  void Collect(const std::string& prefix, ParameterList<T>& out) const;
};

/// y = G * H + (1 - G) * x with H = relu(x Wh + bh), G = sigmoid(x Wg + bg).
template <typename T>
struct Highway {
  Linear<T> transform;
  Linear<T> gate;

  static Highway Create(std::size_t width, CounterRng& rng);
  Tensor<T> Forward(const Tensor<T>& x) const;
  void Collect(const std::string& prefix, ParameterList<T>& out) const;
};

template <typename T>
struct BatchNorm {
  Tensor<T> gamma;
  Tensor<T> beta;
  Tensor<T> running_mean;
  Tensor<T> running_var;

  static BatchNorm Create(std::size_t channels);
  Tensor<T> Forward(const Tensor<T>& x, Mode mode) const;
  void Collect(const std::string& prefix, ParameterList<T>& out) const;
};

struct ConvBankConfig {
  std::vector<std::size_t> widths = {1, 3, 5};
  std::size_t channels = 4;
  std::size_t pool_width = 2;
  std::size_t projection_width = 3;
};

/// Convolution bank front end: per-width conv -> batchnorm -> relu, stacked
/// along channels, stride-1 max-pool, projection conv back to the input
/// width, then a linear layer. Every stage preserves sequence length.
template <typename T>
struct ConvBank {
  std::vector<Tensor<T>> kernels;  // {channels, in, width} per bank width
  std::vector<BatchNorm<T>> norms;
  std::size_t pool_width = 2;
  Tensor<T> projection;  // {in, widths * channels, projection_width}
  Tensor<T> projection_bias;
  Linear<T> output;

  static ConvBank Create(std::size_t in, const ConvBankConfig& cfg, CounterRng& rng);
  std::size_t stacked_channels() const;
  /// Output of the stacked bank before pooling (T x widths*channels).
  Tensor<T> Bank(const Tensor<T>& x, Mode mode) const;
  Tensor<T> Forward(const Tensor<T>& x, Mode mode) const;
  /// Several sequences at once. Convolutions run per sequence; batchnorm
  /// statistics are taken over the frames of all of them.
  std::vector<Tensor<T>> ForwardBatch(const std::vector<Tensor<T>>& xs, Mode mode) const;
  void Collect(const std::string& prefix, ParameterList<T>& out) const;
};

}  // namespace vcseq::nn
