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
#include <vector>

#include "vcseq/autodiff/tensor.hpp"
#include "vcseq/dsp/mel.hpp"

namespace vcseq::pipeline {

/// Source and target mels padded to the longest member with the silence
/// value. Rows are time; element b occupies rows [b*max, (b+1)*max).
template <typename T>
struct Batch {
  std::size_t n_mels = 0;
  std::size_t max_source = 0;
  std::size_t max_target = 0;
  std::vector<std::size_t> source_lengths;
  std::vector<std::size_t> target_lengths;
  std::vector<T> source;  // B*max_source x n_mels
  std::vector<T> target;  // B*max_target x n_mels
  std::vector<T> mask;    // B*max_target; 1 on real frames, 0 on padding

  std::size_t size() const { return source_lengths.size(); }
  /// Unpadded source of element b, T_b x n_mels.
  ad::Tensor<T> Source(std::size_t b) const;
  /// Unpadded target of element b, N_b x n_mels.
  ad::Tensor<T> Target(std::size_t b) const;
  /// All targets stacked, B*max_target x n_mels, and the matching mask.
  ad::Tensor<T> StackedTarget() const;
  ad::Tensor<T> StackedMask() const;
};

template <typename T>
Batch<T> MakeBatch(const std::vector<dsp::MelSpectrogram>& sources,
                   const std::vector<dsp::MelSpectrogram>& targets,
                   const std::vector<std::size_t>& indices, T pad_value);

/// sum(mask * |pred - target|) / (valid frames * width). `mask` has one entry
/// per row; rows with mask 0 contribute exactly nothing.
template <typename T>
ad::Tensor<T> L1Loss(const ad::Tensor<T>& pred, const ad::Tensor<T>& target,
                     const ad::Tensor<T>& mask);

/// Appends zero rows to a prediction so it lines up with a padded target.
template <typename T>
ad::Tensor<T> PadRows(const ad::Tensor<T>& x, std::size_t rows);

}  // namespace vcseq::pipeline
