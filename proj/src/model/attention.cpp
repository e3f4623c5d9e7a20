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

#include "vcseq/model/attention.hpp"

#include "vcseq/common/error.hpp"

namespace vcseq::model {

using ad::Add;
using ad::MatMul;

template <typename T>
Attention<T> Attention<T>::Create(const ModelConfig& cfg, std::size_t query_width,
                                  std::size_t memory_width, CounterRng& rng) {
  Attention att;
  const std::size_t a = cfg.attn_dim;
  att.w_query = nn::XavierUniform<T>({query_width, a}, query_width, a, rng);
  att.w_memory = nn::XavierUniform<T>({memory_width, a}, memory_width, a, rng);
  att.w_location = nn::XavierUniform<T>({cfg.loc_kernels, a}, cfg.loc_kernels, a, rng);
  att.v = nn::XavierUniform<T>({a, 1}, a, 1, rng);
  att.location_kernels = nn::XavierUniform<T>({cfg.loc_kernels, 1, cfg.loc_width}, cfg.loc_width,
                                              cfg.loc_kernels * cfg.loc_width, rng);
  att.beta = static_cast<T>(cfg.beta);
  att.form = cfg.attn_form;
  return att;
}

template <typename T>
Tensor<T> Attention<T>::LocationFeatures(const Tensor<T>& alpha_prev) const {
  if (alpha_prev.size() == 0) throw ArgumentError("location features of an empty alignment");
  return ad::Conv1d(ad::Reshape(alpha_prev, {alpha_prev.size(), 1}), location_kernels,
                    Tensor<T>());
}

template <typename T>
Tensor<T> Attention<T>::Keys(const Tensor<T>& memory) const {
  return MatMul(memory, w_memory);
}

template <typename T>
Tensor<T> Attention<T>::Energies(const Tensor<T>& s_prev, const Tensor<T>& keys,
                                 const Tensor<T>& location) const {
  if (keys.rows() != location.rows()) {
    throw ShapeError("attention keys " + ad::ShapeString(keys.shape()) + " vs location " +
                     ad::ShapeString(location.shape()));
  }
  const auto query = MatMul(s_prev, w_query);  // 1 x A, broadcast over memory rows
  const auto content = form == AttentionForm::kMultiplicative ? ad::Mul(keys, query)
                                                              : Add(keys, query);
  const auto hidden = ad::Tanh(Add(content, MatMul(location, w_location)));
  const auto e = MatMul(hidden, v);  // L x 1
  return ad::Reshape(e, {1, e.rows()});
}

template <typename T>
Tensor<T> Attention<T>::Weights(const Tensor<T>& energies) const {
  return ad::Softmax(energies, beta);
}

template <typename T>
Tensor<T> Attention<T>::Context(const Tensor<T>& alpha, const Tensor<T>& memory) const {
  if (alpha.size() != memory.rows()) {
    throw ShapeError("context: alpha " + ad::ShapeString(alpha.shape()) + " vs memory " +
                     ad::ShapeString(memory.shape()));
  }
  return MatMul(ad::Reshape(alpha, {1, alpha.size()}), memory);
}

template <typename T>
AttentionStep<T> Attention<T>::Step(const Tensor<T>& s_prev, const Tensor<T>& alpha_prev,
                                    const Tensor<T>& memory, const Tensor<T>& keys) const {
  AttentionStep<T> out;
  out.energies = Energies(s_prev, keys, LocationFeatures(alpha_prev));
  out.alpha = Weights(out.energies);
  out.context = Context(out.alpha, memory);
  return out;
}

template <typename T>
void Attention<T>::Collect(const std::string& prefix, nn::ParameterList<T>& out) const {
  out.push_back({prefix + ".w_query", w_query, true});
  out.push_back({prefix + ".w_memory", w_memory, true});
  out.push_back({prefix + ".w_location", w_location, true});
  out.push_back({prefix + ".v", v, true});
  out.push_back({prefix + ".location_kernels", location_kernels, true});
}

template struct Attention<float>;
template struct Attention<double>;

}  // namespace vcseq::model
