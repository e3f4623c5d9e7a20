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

#include "vcseq/autodiff/adam.hpp"

#include <cmath>

#include "vcseq/common/error.hpp"

namespace vcseq::ad {

template <typename T>
AdamState<T> MakeAdamState(const ParameterList<T>& params) {
  AdamState<T> state;
  for (const auto& p : params) {
    if (!p.trainable) continue;
    state.m.emplace_back(p.tensor.size(), T(0));
    state.v.emplace_back(p.tensor.size(), T(0));
  }
  return state;
}

template <typename T>
void AdamStep(ParameterList<T>& params, AdamState<T>& state, const AdamOptions& opts) {
  if (state.empty()) state = MakeAdamState(params);
  state.t += 1;
  const T b1 = static_cast<T>(opts.beta1);
  const T b2 = static_cast<T>(opts.beta2);
  const T correction1 = static_cast<T>(1.0 - std::pow(opts.beta1, static_cast<double>(state.t)));
  const T correction2 = static_cast<T>(1.0 - std::pow(opts.beta2, static_cast<double>(state.t)));
  const T lr = static_cast<T>(opts.lr);
  const T eps = static_cast<T>(opts.eps);
  std::size_t slot = 0;
  for (auto& p : params) {
    if (!p.trainable) continue;
    if (slot >= state.m.size() || state.m[slot].size() != p.tensor.size()) {
      throw ShapeError("adam state does not match parameter " + p.name);
    }
    auto& m = state.m[slot];
    auto& v = state.v[slot];
    ++slot;
    // grad() reads as zeros for a parameter backward never reached.
    auto theta = p.tensor.mutable_data();
    const auto g = p.tensor.grad();
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = b1 * m[i] + (T(1) - b1) * g[i];
      v[i] = b2 * v[i] + (T(1) - b2) * g[i] * g[i];
      const T m_hat = m[i] / correction1;
      const T v_hat = v[i] / correction2;
      theta[i] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
  if (slot != state.m.size()) throw ShapeError("adam state has more slots than parameters");
}

template AdamState<float> MakeAdamState(const ParameterList<float>&);
template AdamState<double> MakeAdamState(const ParameterList<double>&);
template void AdamStep(ParameterList<float>&, AdamState<float>&, const AdamOptions&);
template void AdamStep(ParameterList<double>&, AdamState<double>&, const AdamOptions&);

}  // namespace vcseq::ad
