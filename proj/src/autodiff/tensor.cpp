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

#include "vcseq/autodiff/tensor.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>
#include <utility>

#include "vcseq/common/error.hpp"

namespace vcseq::ad {

std::size_t NumElements(const Shape& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string ShapeString(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ']';
  return os.str();
}

template <typename T>
Tensor<T> Tensor<T>::Zeros(const Shape& shape, bool requires_grad) {
  return Full(shape, T(0), requires_grad);
}

template <typename T>
Tensor<T> Tensor<T>::Full(const Shape& shape, T value, bool requires_grad) {
  auto node = std::make_shared<Node<T>>();
  node->shape = shape;
  node->value.assign(NumElements(shape), value);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

template <typename T>
Tensor<T> Tensor<T>::FromData(const Shape& shape, std::vector<T> data, bool requires_grad) {
  if (data.size() != NumElements(shape)) {
    throw ShapeError("tensor data length " + std::to_string(data.size()) +
                     " does not match shape " + ShapeString(shape));
  }
  auto node = std::make_shared<Node<T>>();
  node->shape = shape;
  node->value = std::move(data);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

template <typename T>
Tensor<T> Tensor<T>::Scalar(T value, bool requires_grad) {
  return FromData({}, {value}, requires_grad);
}

template <typename T>
Tensor<T> Tensor<T>::Row(std::initializer_list<T> values) {
  return FromData({1, values.size()}, std::vector<T>(values));
}

template <typename T>
std::size_t Tensor<T>::rows() const {
  const auto& s = node_->shape;
  if (s.size() == 2) return s[0];
  if (s.size() <= 1) return 1;
  throw ShapeError("rows() on rank-" + std::to_string(s.size()) + " tensor " + ShapeString(s));
}

template <typename T>
std::size_t Tensor<T>::cols() const {
  const auto& s = node_->shape;
  if (s.size() == 2) return s[1];
  if (s.size() == 1) return s[0];
  if (s.empty()) return 1;
  throw ShapeError("cols() on rank-" + std::to_string(s.size()) + " tensor " + ShapeString(s));
}

template <typename T>
T Tensor<T>::item() const {
  if (size() != 1) throw ShapeError("item() on tensor of shape " + ShapeString(shape()));
  return node_->value[0];
}

template <typename T>
std::span<const T> Tensor<T>::grad() const {
  if (!has_grad()) node_->GradBuffer();
  return node_->grad;
}

template <typename T>
void Tensor<T>::ZeroGrad() {
  std::fill(node_->grad.begin(), node_->grad.end(), T(0));
}

template <typename T>
bool Tensor<T>::AllFinite() const {
  for (T v : node_->value) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

template <typename T>
Tensor<T> Tensor<T>::Detach() const {
  return FromData(shape(), node_->value, false);
}

template <typename T>
Tensor<T> Tensor<T>::Clone() const {
  auto t = FromData(shape(), node_->value, node_->requires_grad);
  if (has_grad()) t.node_->grad = node_->grad;
  return t;
}

template <typename T>
std::vector<Node<T>*> Tape(const Tensor<T>& loss) {
  std::vector<Node<T>*> order;
  std::unordered_set<Node<T>*> seen;
  // Iterative post-order DFS; recursion depth would track sequence length.
  std::vector<std::pair<Node<T>*, std::size_t>> stack;
  Node<T>* root = loss.node().get();
  if (!root->requires_grad) return order;
  stack.emplace_back(root, 0);
  seen.insert(root);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node<T>* child = node->inputs[next++].get();
      if (child && child->requires_grad && seen.insert(child).second) stack.emplace_back(child, 0);
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  return order;
}

template <typename T>
void Backward(const Tensor<T>& loss) {
  if (loss.size() != 1) {
    throw ArgumentError("backward needs a scalar loss, got shape " + ShapeString(loss.shape()));
  }
  if (!loss.AllFinite()) throw NonFiniteError("loss is not finite");
  auto order = Tape(loss);
  for (Node<T>* node : order) {
    if (!node->is_leaf()) node->grad.assign(node->value.size(), T(0));
  }
  Node<T>* root = loss.node().get();
  if (root->requires_grad) root->GradBuffer()[0] += T(1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node<T>* node = *it;
    if (!node->is_leaf()) node->backward(*node);
  }
}

template class Tensor<float>;
template class Tensor<double>;
template void Backward(const Tensor<float>&);
template void Backward(const Tensor<double>&);
template std::vector<Node<float>*> Tape(const Tensor<float>&);
template std::vector<Node<double>*> Tape(const Tensor<double>&);

}  // namespace vcseq::ad
