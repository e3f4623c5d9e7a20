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

#include "vcseq/nn/layers.hpp"

#include <cmath>

#include "vcseq/common/error.hpp"

namespace vcseq::nn {

using ad::Add;
using ad::Concat;
using ad::MatMul;
using ad::Mul;
using ad::Slice;
using ad::Sub;

template <typename T>
Tensor<T> XavierUniform(const ad::Shape& shape, std::size_t fan_in, std::size_t fan_out,
                        CounterRng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::vector<T> data(ad::NumElements(shape));
  for (auto& v : data) v = static_cast<T>(rng.Uniform(-limit, limit));
  return Tensor<T>::FromData(shape, std::move(data), true);
}

// ---------------------------------------------------------------- Linear

template <typename T>
Linear<T> Linear<T>::Create(std::size_t in, std::size_t out, CounterRng& rng, bool with_bias) {
  Linear layer;
  layer.weight = XavierUniform<T>({in, out}, in, out, rng);
  if (with_bias) layer.bias = Tensor<T>::Zeros({out}, true);
  return layer;
}

template <typename T>
Tensor<T> Linear<T>::Forward(const Tensor<T>& x) const {
  auto y = MatMul(x, weight);
  return bias.defined() ? Add(y, bias) : y;
}

template <typename T>
void Linear<T>::Collect(const std::string& prefix, ParameterList<T>& out) const {
  out.push_back({prefix + ".weight", weight, true});
  if (bias.defined()) out.push_back({prefix + ".bias", bias, true});
}

// ---------------------------------------------------------------- Prenet

template <typename T>
Prenet<T> Prenet<T>::Create(std::size_t in, const std::vector<std::size_t>& sizes, T dropout,
                            CounterRng& rng) {
  Prenet net;
  net.dropout = dropout;
  for (std::size_t size : sizes) {
    net.layers.push_back(Linear<T>::Create(in, size, rng));
    in = size;
  }
  return net;
}

template <typename T>
Tensor<T> Prenet<T>::Forward(const Tensor<T>& x, const Context& ctx) const {
  Tensor<T> h = x;
  for (const auto& layer : layers) {
    h = ad::Relu(layer.Forward(h));
    if (ctx.mode == Mode::kTrain && dropout > T(0)) {
      if (ctx.rng == nullptr) throw ArgumentError("prenet dropout in train mode needs an rng");
      h = ad::Dropout(h, dropout, ctx.mode, *ctx.rng);
    }
  }
  return h;
}

template <typename T>
void Prenet<T>::Collect(const std::string& prefix, ParameterList<T>& out) const {
  for (std::size_t i = 0; i < layers.size(); ++i)
    layers[i].Collect(prefix + "." + std::to_string(i), out);
}

// ---------------------------------------------------------------- GRU

template <typename T>
GruCell<T> GruCell<T>::Create(std::size_t in, std::size_t hidden, CounterRng& rng) {
  GruCell cell;
  // Each gate's block is initialized as its own in x H matrix.
  std::vector<T> w(in * 3 * hidden);
  for (std::size_t g = 0; g < 3; ++g) {
    auto block = XavierUniform<T>({in, hidden}, in, hidden, rng);
    for (std::size_t i = 0; i < in; ++i)
      for (std::size_t j = 0; j < hidden; ++j) w[i * 3 * hidden + g * hidden + j] = block.at(i, j);
  }
  cell.w_input = Tensor<T>::FromData({in, 3 * hidden}, std::move(w), true);
  std::vector<T> u(hidden * 2 * hidden);
  for (std::size_t g = 0; g < 2; ++g) {
    auto block = XavierUniform<T>({hidden, hidden}, hidden, hidden, rng);
    for (std::size_t i = 0; i < hidden; ++i)
      for (std::size_t j = 0; j < hidden; ++j) u[i * 2 * hidden + g * hidden + j] = block.at(i, j);
  }
  cell.u_gates = Tensor<T>::FromData({hidden, 2 * hidden}, std::move(u), true);
  cell.u_cand = XavierUniform<T>({hidden, hidden}, hidden, hidden, rng);
  cell.bias = Tensor<T>::Zeros({3 * hidden}, true);
  return cell;
}

template <typename T>
Tensor<T> GruCell<T>::ProjectInput(const Tensor<T>& x) const {
  if (x.cols() != input_size()) {
    throw ShapeError("gru input width " + std::to_string(x.cols()) + " != " +
                     std::to_string(input_size()));
  }
  return Add(MatMul(x, w_input), bias);
}

template <typename T>
Tensor<T> GruCell<T>::StepProjected(const Tensor<T>& projected, const Tensor<T>& h_prev) const {
  const std::size_t hidden = hidden_size();
  if (h_prev.size() != hidden || projected.size() != 3 * hidden) {
    throw ShapeError("gru step: state " + ad::ShapeString(h_prev.shape()) + " projection " +
                     ad::ShapeString(projected.shape()) + " for hidden size " +
                     std::to_string(hidden));
  }
  const auto gates =
      ad::Sigmoid(Add(Slice(projected, 1, 0, 2 * hidden), MatMul(h_prev, u_gates)));
  const auto z = Slice(gates, 1, 0, hidden);
  const auto r = Slice(gates, 1, hidden, 2 * hidden);
  const auto cand = ad::Tanh(
      Add(Slice(projected, 1, 2 * hidden, 3 * hidden), MatMul(Mul(r, h_prev), u_cand)));
  return Add(h_prev, Mul(z, Sub(cand, h_prev)));
}

template <typename T>
Tensor<T> GruCell<T>::Step(const Tensor<T>& x, const Tensor<T>& h_prev) const {
  return StepProjected(ProjectInput(ad::Reshape(x, {1, x.size()})), ad::Reshape(h_prev, {1, h_prev.size()}));
}

template <typename T>
Tensor<T> GruCell<T>::Run(const Tensor<T>& x, bool reverse) const {
  const std::size_t frames = x.rows();
  const std::size_t hidden = hidden_size();
  if (frames == 0 || x.size() == 0) return Tensor<T>::Zeros({0, hidden});
  const auto projected = ProjectInput(x);
  std::vector<Tensor<T>> states(frames);
  Tensor<T> h = Tensor<T>::Zeros({1, hidden});
  for (std::size_t step = 0; step < frames; ++step) {
    const std::size_t t = reverse ? frames - 1 - step : step;
    h = StepProjected(Slice(projected, 0, t, t + 1), h);
    states[t] = h;
  }
  return Concat(states, 0);
}

template <typename T>
void GruCell<T>::Collect(const std::string& prefix, ParameterList<T>& out) const {
  out.push_back({prefix + ".w_input", w_input, true});
  out.push_back({prefix + ".u_gates", u_gates, true});
  out.push_back({prefix + ".u_cand", u_cand, true});
  out.push_back({prefix + ".bias", bias, true});
}

template <typename T>
BiGru<T> BiGru<T>::Create(std::size_t in, std::size_t hidden, CounterRng& rng) {
  BiGru layer;
  layer.forward = GruCell<T>::Create(in, hidden, rng);
  layer.backward = GruCell<T>::Create(in, hidden, rng);
  return layer;
}

template <typename T>
Tensor<T> BiGru<T>::Forward(const Tensor<T>& x) const {
  if (forward.hidden_size() != backward.hidden_size()) {
    throw ShapeError("bidirectional gru halves disagree on hidden size");
  }
  if (x.rows() == 0 || x.size() == 0) return Tensor<T>::Zeros({0, 2 * forward.hidden_size()});
  return Concat<T>({forward.Run(x, false), backward.Run(x, true)}, 1);
}

template <typename T>
void BiGru<T>::Collect(const std::string& prefix, ParameterList<T>& out) const {
  forward.Collect(prefix + ".fwd", out);
  backward.Collect(prefix + ".bwd", out);
}

// ---------------------------------------------------------------- Highway

template <typename T>
Highway<T> Highway<T>::Create(std::size_t width, CounterRng& rng) {
  Highway layer;
  layer.transform = Linear<T>::Create(width, width, rng);
  layer.gate = Linear<T>::Create(width, width, rng);
  return layer;
}

template <typename T>
Tensor<T> Highway<T>::Forward(const Tensor<T>& x) const {
  if (x.cols() != transform.in()) {
    throw ShapeError("highway width " + std::to_string(transform.in()) + " got input " +
                     ad::ShapeString(x.shape()));
  }
  const auto h = ad::Relu(transform.Forward(x));
  const auto g = ad::Sigmoid(gate.Forward(x));
  return Add(x, Mul(g, Sub(h, x)));
}

template <typename T>
void Highway<T>::Collect(const std::string& prefix, ParameterList<T>& out) const {
  transform.Collect(prefix + ".transform", out);
  gate.Collect(prefix + ".gate", out);
}

// ---------------------------------------------------------------- BatchNorm

template <typename T>
BatchNorm<T> BatchNorm<T>::Create(std::size_t channels) {
  BatchNorm bn;
  bn.gamma = Tensor<T>::Full({channels}, T(1), true);
  bn.beta = Tensor<T>::Zeros({channels}, true);
  bn.running_mean = Tensor<T>::Zeros({channels});
  bn.running_var = Tensor<T>::Full({channels}, T(1));
  return bn;
}

template <typename T>
Tensor<T> BatchNorm<T>::Forward(const Tensor<T>& x, Mode mode) const {
  Tensor<T> mean = running_mean;  // shares storage; train mode updates it
  Tensor<T> var = running_var;
  return ad::BatchNorm1d(x, gamma, beta, mean, var, mode);
}

template <typename T>
void BatchNorm<T>::Collect(const std::string& prefix, ParameterList<T>& out) const {
  out.push_back({prefix + ".gamma", gamma, true});
  out.push_back({prefix + ".beta", beta, true});
  out.push_back({prefix + ".running_mean", running_mean, false});
  out.push_back({prefix + ".running_var", running_var, false});
}

// ---------------------------------------------------------------- ConvBank

namespace {

// Per-sequence bank outputs, one entry per kernel width, with each
// batchnorm applied to the row-wise concatenation of every sequence.
template <typename T>
std::vector<std::vector<Tensor<T>>> BankBatch(const ConvBank<T>& bank,
                                              const std::vector<Tensor<T>>& xs, Mode mode) {
  std::vector<std::vector<Tensor<T>>> maps(xs.size());
  for (std::size_t i = 0; i < bank.kernels.size(); ++i) {
    std::vector<Tensor<T>> convs;
    convs.reserve(xs.size());
    for (const auto& x : xs) convs.push_back(ad::Conv1d(x, bank.kernels[i], Tensor<T>()));
    if (convs.size() == 1) {
      maps[0].push_back(ad::Relu(bank.norms[i].Forward(convs[0], mode)));
      continue;
    }
    const auto normed = ad::Relu(bank.norms[i].Forward(Concat(convs, 0), mode));
    std::size_t row = 0;
    for (std::size_t b = 0; b < xs.size(); ++b) {
      maps[b].push_back(ad::Slice(normed, 0, row, row + convs[b].rows()));
      row += convs[b].rows();
    }
  }
  return maps;
}

}  // namespace

template <typename T>
ConvBank<T> ConvBank<T>::Create(std::size_t in, const ConvBankConfig& cfg, CounterRng& rng) {
  ConvBank bank;
  for (std::size_t w : cfg.widths) {
    if (w % 2 == 0) throw ArgumentError("conv bank widths must be odd");
    bank.kernels.push_back(
        XavierUniform<T>({cfg.channels, in, w}, in * w, cfg.channels * w, rng));
    bank.norms.push_back(BatchNorm<T>::Create(cfg.channels));
  }
  bank.pool_width = cfg.pool_width;
  const std::size_t stacked = cfg.widths.size() * cfg.channels;
  const std::size_t pw = cfg.projection_width;
  bank.projection = XavierUniform<T>({in, stacked, pw}, stacked * pw, in * pw, rng);
  bank.projection_bias = Tensor<T>::Zeros({in}, true);
  bank.output = Linear<T>::Create(in, in, rng);
  return bank;
}

template <typename T>
std::size_t ConvBank<T>::stacked_channels() const {
  std::size_t total = 0;
  for (const auto& k : kernels) total += k.dim(0);
  return total;
}

template <typename T>
Tensor<T> ConvBank<T>::Bank(const Tensor<T>& x, Mode mode) const {
  return Concat(BankBatch(*this, {x}, mode)[0], 1);
}

template <typename T>
Tensor<T> ConvBank<T>::Forward(const Tensor<T>& x, Mode mode) const {
  return ForwardBatch({x}, mode)[0];
}

template <typename T>
std::vector<Tensor<T>> ConvBank<T>::ForwardBatch(const std::vector<Tensor<T>>& xs,
                                                 Mode mode) const {
  for (const auto& x : xs) {
    if (x.rank() != 2 || x.rows() == 0) {
      throw ShapeError("conv bank expects a non-empty frames x channels input, got " +
                       ad::ShapeString(x.shape()));
    }
  }
  auto maps = BankBatch(*this, xs, mode);
  std::vector<Tensor<T>> out;
  out.reserve(xs.size());
  for (auto& m : maps) {
    const auto pooled = ad::MaxPool1d(Concat(m, 1), pool_width);
    out.push_back(output.Forward(ad::Conv1d(pooled, projection, projection_bias)));
  }
  return out;
}

template <typename T>
void ConvBank<T>::Collect(const std::string& prefix, ParameterList<T>& out) const {
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    const std::string name = prefix + ".conv" + std::to_string(i);
    out.push_back({name + ".weight", kernels[i], true});
    norms[i].Collect(name + ".bn", out);
  }
  out.push_back({prefix + ".projection.weight", projection, true});
  out.push_back({prefix + ".projection.bias", projection_bias, true});
  output.Collect(prefix + ".linear", out);
}

#define VCSEQ_INSTANTIATE_LAYERS(T)                                                 \
  template Tensor<T> XavierUniform<T>(const ad::Shape&, std::size_t, std::size_t,  \
                                      CounterRng&);                                 \
  template struct Linear<T>;                                                        \
  template struct Prenet<T>;                                                        \
  template struct GruCell<T>;                                                       \
  template struct BiGru<T>;                                                         \
  template struct Highway<T>;                                                       \
  template struct BatchNorm<T>;                                                     \
  template struct ConvBank<T>;

VCSEQ_INSTANTIATE_LAYERS(float)
VCSEQ_INSTANTIATE_LAYERS(double)

}  // namespace vcseq::nn
