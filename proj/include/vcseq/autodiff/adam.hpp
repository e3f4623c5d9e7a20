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

#include <cstdint>
#include <vector>

#include "vcseq/autodiff/parameters.hpp"

namespace vcseq::ad {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// First/second moments, one pair per trainable parameter in list order.
template <typename T>
struct AdamState {
  std::vector<std::vector<T>> m;
  std::vector<std::vector<T>> v;
  std::int64_t t = 0;

  bool empty() const { return m.empty(); }
};

/// Sizes the moment buffers to match `params` (zero-filled).
template <typename T>
AdamState<T> MakeAdamState(const ParameterList<T>& params);

/// One bias-corrected Adam update from the gradients held by `params`.
template <typename T>
void AdamStep(ParameterList<T>& params, AdamState<T>& state, const AdamOptions& opts);

}  // namespace vcseq::ad
