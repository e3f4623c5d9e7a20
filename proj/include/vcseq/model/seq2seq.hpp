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

#include "vcseq/config.hpp"
#include "vcseq/model/decoder.hpp"
#include "vcseq/model/encoder.hpp"

namespace vcseq::model {

/// Encoder + attention decoder mapping source mel frames to target frames.
template <typename T>
struct Seq2Seq {
  ModelConfig config;
  std::size_t n_mels = 80;
  Encoder<T> encoder;
  Decoder<T> decoder;

  /// Fresh weights drawn from a stream keyed by `seed`.
  static Seq2Seq Create(const ModelConfig& cfg, std::size_t n_mels, std::uint64_t seed);

  /// Every parameter and buffer, in a fixed order with unique names.
  nn::ParameterList<T> Parameters() const;
};

}  // namespace vcseq::model
