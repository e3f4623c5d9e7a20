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
#include <string>
#include <vector>

namespace vcseq::model {

enum class CheckScale { kTiny, kSmall };

struct ComponentCheck {
  std::string component;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t entries = 0;
  bool passed = false;
};

struct CheckSuiteOptions {
  CheckScale scale = CheckScale::kTiny;
  std::uint64_t seed = 1;
  /// Component whose gradient is deliberately corrupted; empty for none.
  std::string fault;
};

/// Component names in report order.
const std::vector<std::string>& CheckComponents();

/// Double-precision finite-difference checks of every layer the model is
/// built from, then of the whole model on a short utterance. Parameters are
/// jittered away from their initial values first so no unit starts on a
/// ReLU kink.
std::vector<ComponentCheck> RunGradientChecks(const CheckSuiteOptions& opts);

}  // namespace vcseq::model
