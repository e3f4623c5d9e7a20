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
#include "vcseq/common/rng.hpp"

namespace vcseq::ad {

enum class Mode { kTrain, kInfer };

/// While alive on a thread, ops on that thread record no graph history.
class NoGradScope {
 public:
  NoGradScope();
  ~NoGradScope();
  NoGradScope(const NoGradScope&) = delete;
  NoGradScope& operator=(const NoGradScope&) = delete;

 private:
  bool previous_;
};

bool GradEnabled();

// Rank-1 operands read as a single row wherever a matrix is expected.
template <typename T>
Tensor<T> MatMul(const Tensor<T>& a, const Tensor<T>& b);

// Elementwise. `b` may also be a single row broadcast over the rows of `a`.
template <typename T>
Tensor<T> Add(const Tensor<T>& a, const Tensor<T>& b);
template <typename T>
Tensor<T> Sub(const Tensor<T>& a, const Tensor<T>& b);
template <typename T>
Tensor<T> Mul(const Tensor<T>& a, const Tensor<T>& b);

template <typename T>
Tensor<T> Scale(const Tensor<T>& a, T factor);
template <typename T>
Tensor<T> Sigmoid(const Tensor<T>& a);
template <typename T>
Tensor<T> Tanh(const Tensor<T>& a);
template <typename T>
Tensor<T> Relu(const Tensor<T>& a);
template <typename T>
Tensor<T> Abs(const Tensor<T>& a);

template <typename T>
Tensor<T> Concat(const std::vector<Tensor<T>>& parts, std::size_t axis);
/// Half-open range [begin, end) along `axis`.
template <typename T>
Tensor<T> Slice(const Tensor<T>& a, std::size_t axis, std::size_t begin, std::size_t end);
template <typename T>
Tensor<T> Reshape(const Tensor<T>& a, const Shape& shape);
template <typename T>
Tensor<T> Transpose(const Tensor<T>& a);

/// softmax(beta * a) over the last axis.
template <typename T>
Tensor<T> Softmax(const Tensor<T>& a, T beta = T(1));

/// Same-length 1-D convolution (cross-correlation) over time.
/// x: T x C_in, weight: {C_out, C_in, K} with K odd, bias: {C_out} or undefined.
template <typename T>
Tensor<T> Conv1d(const Tensor<T>& x, const Tensor<T>& weight, const Tensor<T>& bias);

/// Stride-1 max over a window of `width` frames starting at each frame;
/// frames past the end are ignored, so the length is preserved.
template <typename T>
Tensor<T> MaxPool1d(const Tensor<T>& x, std::size_t width);

/// Per-channel normalization of x (T x C) over time. Train mode uses batch
/// statistics and folds them into the running buffers with
/// running = momentum * running + (1 - momentum) * batch.
template <typename T>
Tensor<T> BatchNorm1d(const Tensor<T>& x, const Tensor<T>& gamma, const Tensor<T>& beta,
                      Tensor<T>& running_mean, Tensor<T>& running_var, Mode mode,
                      T momentum = T(0.9), T eps = T(1e-5));

/// Inverted dropout: kept units are scaled by 1/(1-p). Identity in infer mode.
template <typename T>
Tensor<T> Dropout(const Tensor<T>& x, T p, Mode mode, CounterRng& rng);

template <typename T>
Tensor<T> Sum(const Tensor<T>& a);
template <typename T>
Tensor<T> Mean(const Tensor<T>& a);

}  // namespace vcseq::ad
