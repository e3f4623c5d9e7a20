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

#include "vcseq/pipeline/batch.hpp"

#include <algorithm>

#include "vcseq/autodiff/ops.hpp"
#include "vcseq/common/error.hpp"

namespace vcseq::pipeline {

template <typename T>
ad::Tensor<T> Batch<T>::Source(std::size_t b) const {
  const auto first = source.begin() + static_cast<std::ptrdiff_t>(b * max_source * n_mels);
  return ad::Tensor<T>::FromData(
      {source_lengths.at(b), n_mels},
      std::vector<T>(first, first + static_cast<std::ptrdiff_t>(source_lengths[b] * n_mels)));
}

template <typename T>
ad::Tensor<T> Batch<T>::Target(std::size_t b) const {
  const auto first = target.begin() + static_cast<std::ptrdiff_t>(b * max_target * n_mels);
  return ad::Tensor<T>::FromData(
      {target_lengths.at(b), n_mels},
      std::vector<T>(first, first + static_cast<std::ptrdiff_t>(target_lengths[b] * n_mels)));
}

template <typename T>
ad::Tensor<T> Batch<T>::StackedTarget() const {
  return ad::Tensor<T>::FromData({size() * max_target, n_mels}, target);
}

template <typename T>
ad::Tensor<T> Batch<T>::StackedMask() const {
  return ad::Tensor<T>::FromData({size() * max_target}, mask);
}

template <typename T>
Batch<T> MakeBatch(const std::vector<dsp::MelSpectrogram>& sources,
                   const std::vector<dsp::MelSpectrogram>& targets,
                   const std::vector<std::size_t>& indices, T pad_value) {
  if (indices.empty()) throw ArgumentError("empty batch");
  Batch<T> batch;
  batch.n_mels = sources.at(indices[0]).n_mels();
  for (std::size_t i : indices) {
    const auto& s = sources.at(i);
    const auto& t = targets.at(i);
    if (s.n_mels() != batch.n_mels || t.n_mels() != batch.n_mels) {
      throw ShapeError("batch members disagree on mel width");
    }
    if (s.n_frames() == 0 || t.n_frames() == 0) throw ArgumentError("empty utterance in batch");
    batch.source_lengths.push_back(s.n_frames());
    batch.target_lengths.push_back(t.n_frames());
    batch.max_source = std::max(batch.max_source, s.n_frames());
    batch.max_target = std::max(batch.max_target, t.n_frames());
  }
  const std::size_t b_count = indices.size(), c = batch.n_mels;
  batch.source.assign(b_count * batch.max_source * c, pad_value);
  batch.target.assign(b_count * batch.max_target * c, pad_value);
  batch.mask.assign(b_count * batch.max_target, T(0));
  for (std::size_t b = 0; b < b_count; ++b) {
    const auto& s = sources[indices[b]].frames.data;
    const auto& t = targets[indices[b]].frames.data;
    std::copy(s.begin(), s.end(), batch.source.begin() + static_cast<std::ptrdiff_t>(b * batch.max_source * c));
    std::copy(t.begin(), t.end(), batch.target.begin() + static_cast<std::ptrdiff_t>(b * batch.max_target * c));
    std::fill_n(batch.mask.begin() + static_cast<std::ptrdiff_t>(b * batch.max_target),
                batch.target_lengths[b], T(1));
  }
  return batch;
}

template <typename T>
ad::Tensor<T> L1Loss(const ad::Tensor<T>& pred, const ad::Tensor<T>& target,
                     const ad::Tensor<T>& mask) {
  if (pred.shape() != target.shape() || pred.rank() != 2) {
    throw ShapeError("l1 loss: prediction " + ad::ShapeString(pred.shape()) + " vs target " +
                     ad::ShapeString(target.shape()));
  }
  const std::size_t rows = pred.rows(), cols = pred.cols();
  if (mask.size() != rows) throw ShapeError("l1 loss: mask needs one entry per row");
  std::vector<T> expanded(rows * cols);
  std::size_t valid = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const T m = mask[r];
    if (m != T(0) && m != T(1)) throw ArgumentError("l1 loss: mask entries must be 0 or 1");
    if (m == T(1)) ++valid;
    std::fill_n(expanded.begin() + static_cast<std::ptrdiff_t>(r * cols), cols, m);
  }
  if (valid == 0) throw ArgumentError("l1 loss: mask selects no frames");
  const auto weights = ad::Tensor<T>::FromData({rows, cols}, std::move(expanded));
  const auto total = ad::Sum(ad::Mul(ad::Abs(ad::Sub(pred, target)), weights));
  return ad::Scale(total, T(1) / static_cast<T>(valid * cols));
}

template <typename T>
ad::Tensor<T> PadRows(const ad::Tensor<T>& x, std::size_t rows) {
  if (x.rows() > rows) throw ShapeError("cannot pad to fewer rows");
  if (x.rows() == rows) return x;
  return ad::Concat<T>({x, ad::Tensor<T>::Zeros({rows - x.rows(), x.cols()})}, 0);
}

#define VCSEQ_INSTANTIATE(T)                                                                  \
  template struct Batch<T>;                                                                   \
  template Batch<T> MakeBatch<T>(const std::vector<dsp::MelSpectrogram>&,                     \
                                 const std::vector<dsp::MelSpectrogram>&,                     \
                                 const std::vector<std::size_t>&, T);                         \
  template ad::Tensor<T> L1Loss<T>(const ad::Tensor<T>&, const ad::Tensor<T>&,               \
                                   const ad::Tensor<T>&);                                     \
  template ad::Tensor<T> PadRows<T>(const ad::Tensor<T>&, std::size_t);

VCSEQ_INSTANTIATE(float)
VCSEQ_INSTANTIATE(double)
#undef VCSEQ_INSTANTIATE

}  // namespace vcseq::pipeline
