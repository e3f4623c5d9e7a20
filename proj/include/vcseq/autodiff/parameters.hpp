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

#include <string>
#include <vector>

#include "vcseq/autodiff/tensor.hpp"

namespace vcseq::ad {

/// A named model tensor. Buffers (batchnorm running statistics) travel with
/// the parameters through checkpoints but are never touched by optimizers.
template <typename T>
struct NamedTensor {
  std::string name;
  Tensor<T> tensor;
  bool trainable = true;
};

template <typename T>
using ParameterList = std::vector<NamedTensor<T>>;

template <typename T>
void ZeroGrads(ParameterList<T>& params) {
  for (auto& p : params) {
    if (p.trainable) p.tensor.ZeroGrad();
  }
}

}  // namespace vcseq::ad
