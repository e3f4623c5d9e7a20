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
#include <functional>
#include <string>

#include "vcseq/autodiff/parameters.hpp"

namespace vcseq::ad {

struct GradCheckOptions {
  double eps = 1e-5;
  double tol = 1e-4;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t entries_checked = 0;
  bool finite = true;
  bool passed = false;
};

/// Central-difference check of every trainable entry in `params` against the
/// gradient Backward() produces for `loss_fn()`. The loss function must be
/// deterministic: it is re-evaluated twice per entry.
GradCheckReport GradCheck(const std::function<Tensor<double>()>& loss_fn,
                          ParameterList<double>& params, const GradCheckOptions& opts = {});

double RelativeError(double analytic, double numeric);

}  // namespace vcseq::ad
