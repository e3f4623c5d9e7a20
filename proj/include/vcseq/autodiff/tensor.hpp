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
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vcseq::ad {

using Shape = std::vector<std::size_t>;

std::size_t NumElements(const Shape& shape);
std::string ShapeString(const Shape& shape);

template <typename T>
struct Node;

template <typename T>
using NodePtr = std::shared_ptr<Node<T>>;

/// One value in the computation graph. Intermediate nodes keep their inputs
/// alive and carry a closure that pushes their gradient into those inputs.
template <typename T>
struct Node {
  Shape shape;
  std::vector<T> value;
  std::vector<T> grad;  // empty until a gradient reaches this node
  bool requires_grad = false;
  std::vector<NodePtr<T>> inputs;
  std::function<void(Node&)> backward;
  const char* op = "leaf";

  bool is_leaf() const { return !backward; }
  T* GradBuffer() {
    if (grad.size() != value.size()) grad.assign(value.size(), T(0));
    return grad.data();
  }
};

/// Dense row-major array with an optional gradient slot. Copies share the
/// underlying node; use Clone() for a detached deep copy.
template <typename T>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(NodePtr<T> node) : node_(std::move(node)) {}

  static Tensor Zeros(const Shape& shape, bool requires_grad = false);
  static Tensor Full(const Shape& shape, T value, bool requires_grad = false);
  static Tensor FromData(const Shape& shape, std::vector<T> data, bool requires_grad = false);
  static Tensor Scalar(T value, bool requires_grad = false);
  static Tensor Row(std::initializer_list<T> values);

  bool defined() const { return static_cast<bool>(node_); }
  const Shape& shape() const { return node_->shape; }
  std::size_t rank() const { return node_->shape.size(); }
  std::size_t dim(std::size_t axis) const { return node_->shape.at(axis); }
  std::size_t size() const { return node_->value.size(); }
  /// Rows/cols of a rank-2 tensor; a rank-1 tensor reads as a single row.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const T> data() const { return node_->value; }
  std::span<T> mutable_data() { return node_->value; }
  T operator[](std::size_t i) const { return node_->value[i]; }
  T at(std::size_t r, std::size_t c) const { return node_->value[r * cols() + c]; }
  T item() const;

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool on) { node_->requires_grad = on; }
  bool has_grad() const { return node_->grad.size() == node_->value.size(); }
  /// Gradient view; zeros when nothing has been accumulated yet.
  std::span<const T> grad() const;
  std::span<T> mutable_grad() { return {node_->GradBuffer(), node_->value.size()}; }
  void ZeroGrad();

  bool is_leaf() const { return node_->is_leaf(); }
  const char* op() const { return node_->op; }
  bool AllFinite() const;

  /// Same values, no graph history, no gradient tracking.
  Tensor Detach() const;
  Tensor Clone() const;

  const NodePtr<T>& node() const { return node_; }

 private:
  NodePtr<T> node_;
};

/// Reverse-mode sweep from a scalar loss. Leaf gradients accumulate across
/// calls; intermediate gradients are recomputed on every call.
template <typename T>
void Backward(const Tensor<T>& loss);

/// The topological order Backward() walks, loss last. Each node appears
/// exactly once.
template <typename T>
std::vector<Node<T>*> Tape(const Tensor<T>& loss);

}  // namespace vcseq::ad
