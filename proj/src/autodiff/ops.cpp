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

#include "vcseq/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "vcseq/common/error.hpp"
#include "vcseq/kernels/conv.hpp"
#include "vcseq/kernels/gemm.hpp"

namespace vcseq::ad {
namespace {

thread_local bool g_grad_enabled = true;

template <typename T>
NodePtr<T> MakeNode(const Shape& shape, const char* op,
                    std::initializer_list<const Tensor<T>*> inputs) {
  auto node = std::make_shared<Node<T>>();
  node->shape = shape;
  node->value.assign(NumElements(shape), T(0));
  node->op = op;
  if (!g_grad_enabled) return node;
  for (const Tensor<T>* in : inputs) {
    if (in->defined() && in->requires_grad()) node->requires_grad = true;
  }
  if (node->requires_grad) {
    for (const Tensor<T>* in : inputs) node->inputs.push_back(in->defined() ? in->node() : nullptr);
  }
  return node;
}

template <typename T>
bool Wants(const NodePtr<T>& n) {
  return n && n->requires_grad;
}

[[noreturn]] void ThrowShape(const char* op, const Shape& a, const Shape& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + ShapeString(a) + " and " +
                   ShapeString(b));
}

// Matrix view: rank-1 reads as a row, rank-0 as 1x1.
template <typename T>
std::pair<std::size_t, std::size_t> MatrixDims(const Tensor<T>& t) {
  if (t.rank() > 2) throw ShapeError("expected a matrix, got shape " + ShapeString(t.shape()));
  return {t.rows(), t.cols()};
}

enum class Broadcast { kSame, kRow };

template <typename T>
Broadcast CheckBinary(const char* op, const Tensor<T>& a, const Tensor<T>& b) {
  if (a.shape() == b.shape()) return Broadcast::kSame;
  if (a.rank() == 2 && b.rank() <= 2 && b.size() == a.cols() &&
      (b.rank() < 2 || b.dim(0) == 1)) {
    return Broadcast::kRow;
  }
  ThrowShape(op, a.shape(), b.shape());
}

template <typename T, typename Fwd, typename Dfdx>
Tensor<T> Unary(const Tensor<T>& a, const char* op, Fwd fwd, Dfdx dfdx) {
  auto node = MakeNode<T>(a.shape(), op, {&a});
  const auto& x = a.data();
  for (std::size_t i = 0; i < x.size(); ++i) node->value[i] = fwd(x[i]);
  if (node->requires_grad) {
    node->backward = [dfdx](Node<T>& self) {
      Node<T>& in = *self.inputs[0];
      T* g = in.GradBuffer();
      for (std::size_t i = 0; i < self.value.size(); ++i)
        g[i] += self.grad[i] * dfdx(in.value[i], self.value[i]);
    };
  }
  return Tensor<T>(node);
}

// Decomposes `shape` around `axis` into (outer, extent, inner).
struct AxisSplit {
  std::size_t outer = 1;
  std::size_t extent = 1;
  std::size_t inner = 1;
};

AxisSplit SplitAxis(const Shape& shape, std::size_t axis) {
  AxisSplit s;
  for (std::size_t i = 0; i < axis; ++i) s.outer *= shape[i];
  s.extent = shape[axis];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) s.inner *= shape[i];
  return s;
}

}  // namespace

NoGradScope::NoGradScope() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradScope::~NoGradScope() { g_grad_enabled = previous_; }
bool GradEnabled() { return g_grad_enabled; }

template <typename T>
Tensor<T> MatMul(const Tensor<T>& a, const Tensor<T>& b) {
  const auto [m, k] = MatrixDims(a);
  const auto [k2, n] = MatrixDims(b);
  if (k != k2) ThrowShape("matmul", a.shape(), b.shape());
  auto node = MakeNode<T>({m, n}, "matmul", {&a, &b});
  kernels::GemmNN(m, n, k, a.data().data(), b.data().data(), node->value.data());
  if (node->requires_grad) {
    node->backward = [m = m, n = n, k = k](Node<T>& self) {
      auto& na = self.inputs[0];
      auto& nb = self.inputs[1];
      if (Wants(na)) kernels::GemmNT(m, k, n, self.grad.data(), nb->value.data(), na->GradBuffer());
      if (Wants(nb)) kernels::GemmTN(k, n, m, na->value.data(), self.grad.data(), nb->GradBuffer());
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Add(const Tensor<T>& a, const Tensor<T>& b) {
  CheckBinary("add", a, b);
  auto node = MakeNode<T>(a.shape(), "add", {&a, &b});
  const auto& x = a.data();
  const auto& y = b.data();
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < x.size(); ++i) node->value[i] = x[i] + y[i % n];
  if (node->requires_grad) {
    node->backward = [](Node<T>& self) {
      auto& na = self.inputs[0];
      auto& nb = self.inputs[1];
      if (Wants(na)) {
        T* g = na->GradBuffer();
        for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
      }
      if (Wants(nb)) {
        T* g = nb->GradBuffer();
        const std::size_t n = nb->value.size();
        for (std::size_t i = 0; i < self.grad.size(); ++i) g[i % n] += self.grad[i];
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Sub(const Tensor<T>& a, const Tensor<T>& b) {
  CheckBinary("sub", a, b);
  auto node = MakeNode<T>(a.shape(), "sub", {&a, &b});
  const auto& x = a.data();
  const auto& y = b.data();
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < x.size(); ++i) node->value[i] = x[i] - y[i % n];
  if (node->requires_grad) {
    node->backward = [](Node<T>& self) {
      auto& na = self.inputs[0];
      auto& nb = self.inputs[1];
      if (Wants(na)) {
        T* g = na->GradBuffer();
        for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
      }
      if (Wants(nb)) {
        T* g = nb->GradBuffer();
        const std::size_t n = nb->value.size();
        for (std::size_t i = 0; i < self.grad.size(); ++i) g[i % n] -= self.grad[i];
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Mul(const Tensor<T>& a, const Tensor<T>& b) {
  CheckBinary("mul", a, b);
  auto node = MakeNode<T>(a.shape(), "mul", {&a, &b});
  const auto& x = a.data();
  const auto& y = b.data();
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < x.size(); ++i) node->value[i] = x[i] * y[i % n];
  if (node->requires_grad) {
    node->backward = [](Node<T>& self) {
      auto& na = self.inputs[0];
      auto& nb = self.inputs[1];
      const std::size_t n = nb->value.size();
      if (Wants(na)) {
        T* g = na->GradBuffer();
        for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i] * nb->value[i % n];
      }
      if (Wants(nb)) {
        T* g = nb->GradBuffer();
        for (std::size_t i = 0; i < self.grad.size(); ++i) g[i % n] += self.grad[i] * na->value[i];
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Scale(const Tensor<T>& a, T factor) {
  return Unary(
      a, "scale", [factor](T x) { return x * factor; }, [factor](T, T) { return factor; });
}

template <typename T>
Tensor<T> Sigmoid(const Tensor<T>& a) {
  return Unary(
      a, "sigmoid",
      [](T x) {
        // Split by sign so exp never overflows.
        if (x >= T(0)) return T(1) / (T(1) + std::exp(-x));
        const T e = std::exp(x);
        return e / (T(1) + e);
      },
      [](T, T y) { return y * (T(1) - y); });
}

template <typename T>
Tensor<T> Tanh(const Tensor<T>& a) {
  return Unary(
      a, "tanh", [](T x) { return std::tanh(x); }, [](T, T y) { return T(1) - y * y; });
}

template <typename T>
Tensor<T> Relu(const Tensor<T>& a) {
  return Unary(
      a, "relu", [](T x) { return x > T(0) ? x : T(0); },
      [](T x, T) { return x > T(0) ? T(1) : T(0); });
}

template <typename T>
Tensor<T> Abs(const Tensor<T>& a) {
  return Unary(
      a, "abs", [](T x) { return std::abs(x); },
      [](T x, T) { return x > T(0) ? T(1) : (x < T(0) ? T(-1) : T(0)); });
}

template <typename T>
Tensor<T> Concat(const std::vector<Tensor<T>>& parts, std::size_t axis) {
  if (parts.empty()) throw ArgumentError("concat of zero tensors");
  const Shape& first = parts[0].shape();
  if (axis >= first.size()) throw ShapeError("concat axis out of range for " + ShapeString(first));
  Shape out_shape = first;
  out_shape[axis] = 0;
  for (const auto& p : parts) {
    const Shape& s = p.shape();
    if (s.size() != first.size()) ThrowShape("concat", first, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != axis && s[i] != first[i]) ThrowShape("concat", first, s);
    }
    out_shape[axis] += s[axis];
  }
  auto node = std::make_shared<Node<T>>();
  node->shape = out_shape;
  node->value.resize(NumElements(out_shape));
  node->op = "concat";
  if (g_grad_enabled) {
    for (const auto& p : parts) node->requires_grad = node->requires_grad || p.requires_grad();
    if (node->requires_grad) {
      for (const auto& p : parts) node->inputs.push_back(p.node());
    }
  }
  const AxisSplit out = SplitAxis(out_shape, axis);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    const std::size_t chunk = p.shape()[axis] * out.inner;
    const T* src = p.data().data();
    for (std::size_t o = 0; o < out.outer; ++o) {
      std::copy_n(src + o * chunk, chunk, node->value.data() + o * out.extent * out.inner + offset);
    }
    offset += chunk;
  }
  if (node->requires_grad) {
    node->backward = [axis](Node<T>& self) {
      const AxisSplit out = SplitAxis(self.shape, axis);
      std::size_t offset = 0;
      for (auto& in : self.inputs) {
        const std::size_t chunk = in->shape[axis] * out.inner;
        if (in->requires_grad) {
          T* g = in->GradBuffer();
          for (std::size_t o = 0; o < out.outer; ++o) {
            const T* src = self.grad.data() + o * out.extent * out.inner + offset;
            for (std::size_t i = 0; i < chunk; ++i) g[o * chunk + i] += src[i];
          }
        }
        offset += chunk;
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Slice(const Tensor<T>& a, std::size_t axis, std::size_t begin, std::size_t end) {
  const Shape& s = a.shape();
  if (axis >= s.size() || begin > end || end > s[axis]) {
    throw ShapeError("slice [" + std::to_string(begin) + "," + std::to_string(end) + ") on axis " +
                     std::to_string(axis) + " of shape " + ShapeString(s));
  }
  Shape out_shape = s;
  out_shape[axis] = end - begin;
  auto node = MakeNode<T>(out_shape, "slice", {&a});
  const AxisSplit in = SplitAxis(s, axis);
  const std::size_t chunk = (end - begin) * in.inner;
  const T* src = a.data().data();
  for (std::size_t o = 0; o < in.outer; ++o) {
    std::copy_n(src + (o * in.extent + begin) * in.inner, chunk, node->value.data() + o * chunk);
  }
  if (node->requires_grad) {
    node->backward = [axis, begin, chunk](Node<T>& self) {
      Node<T>& src = *self.inputs[0];
      const AxisSplit in = SplitAxis(src.shape, axis);
      T* g = src.GradBuffer();
      for (std::size_t o = 0; o < in.outer; ++o) {
        T* dst = g + (o * in.extent + begin) * in.inner;
        const T* from = self.grad.data() + o * chunk;
        for (std::size_t i = 0; i < chunk; ++i) dst[i] += from[i];
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Reshape(const Tensor<T>& a, const Shape& shape) {
  if (NumElements(shape) != a.size()) ThrowShape("reshape", a.shape(), shape);
  auto node = MakeNode<T>(shape, "reshape", {&a});
  std::copy(a.data().begin(), a.data().end(), node->value.begin());
  if (node->requires_grad) {
    node->backward = [](Node<T>& self) {
      T* g = self.inputs[0]->GradBuffer();
      for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i];
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Transpose(const Tensor<T>& a) {
  const auto [m, n] = MatrixDims(a);
  auto node = MakeNode<T>({n, m}, "transpose", {&a});
  const T* x = a.data().data();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) node->value[j * m + i] = x[i * n + j];
  if (node->requires_grad) {
    node->backward = [m = m, n = n](Node<T>& self) {
      T* g = self.inputs[0]->GradBuffer();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i * n + j] += self.grad[j * m + i];
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Softmax(const Tensor<T>& a, T beta) {
  if (a.rank() == 0) throw ShapeError("softmax of a scalar");
  const std::size_t width = a.shape().back();
  const std::size_t rows = width == 0 ? 0 : a.size() / width;
  auto node = MakeNode<T>(a.shape(), "softmax", {&a});
  const T* x = a.data().data();
  for (std::size_t r = 0; r < rows; ++r) {
    const T* xr = x + r * width;
    T* yr = node->value.data() + r * width;
    T peak = -std::numeric_limits<T>::infinity();
    for (std::size_t j = 0; j < width; ++j) peak = std::max(peak, beta * xr[j]);
    T total = 0;
    for (std::size_t j = 0; j < width; ++j) {
      yr[j] = std::exp(beta * xr[j] - peak);
      total += yr[j];
    }
    for (std::size_t j = 0; j < width; ++j) yr[j] /= total;
  }
  if (node->requires_grad) {
    node->backward = [beta, rows, width](Node<T>& self) {
      T* g = self.inputs[0]->GradBuffer();
      for (std::size_t r = 0; r < rows; ++r) {
        const T* y = self.value.data() + r * width;
        const T* dy = self.grad.data() + r * width;
        T dot = 0;
        for (std::size_t j = 0; j < width; ++j) dot += dy[j] * y[j];
        for (std::size_t j = 0; j < width; ++j) g[r * width + j] += beta * y[j] * (dy[j] - dot);
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Conv1d(const Tensor<T>& x, const Tensor<T>& weight, const Tensor<T>& bias) {
  if (x.rank() != 2 || weight.rank() != 3) ThrowShape("conv1d", x.shape(), weight.shape());
  const std::size_t frames = x.dim(0);
  const std::size_t cin = x.dim(1);
  const std::size_t cout = weight.dim(0);
  const std::size_t width = weight.dim(2);
  if (weight.dim(1) != cin || width % 2 == 0) ThrowShape("conv1d", x.shape(), weight.shape());
  if (bias.defined() && bias.size() != cout) ThrowShape("conv1d bias", weight.shape(), bias.shape());
  auto node = MakeNode<T>({frames, cout}, "conv1d", {&x, &weight, &bias});
  auto col = std::make_shared<std::vector<T>>(frames * cin * width);
  kernels::Im2Col(frames, cin, width, x.data().data(), col->data());
  kernels::GemmNT(frames, cout, cin * width, col->data(), weight.data().data(), node->value.data());
  if (bias.defined()) {
    for (std::size_t t = 0; t < frames; ++t)
      for (std::size_t o = 0; o < cout; ++o) node->value[t * cout + o] += bias[o];
  }
  if (node->requires_grad) {
    node->backward = [col, frames, cin, cout, width](Node<T>& self) {
      auto& nx = self.inputs[0];
      auto& nw = self.inputs[1];
      auto& nb = self.inputs[2];
      const std::size_t kdim = cin * width;
      if (Wants(nw)) kernels::GemmTN(cout, kdim, frames, self.grad.data(), col->data(), nw->GradBuffer());
      if (Wants(nb)) {
        T* g = nb->GradBuffer();
        for (std::size_t t = 0; t < frames; ++t)
          for (std::size_t o = 0; o < cout; ++o) g[o] += self.grad[t * cout + o];
      }
      if (Wants(nx)) {
        std::vector<T> dcol(frames * kdim, T(0));
        kernels::GemmNN(frames, kdim, cout, self.grad.data(), nw->value.data(), dcol.data());
        kernels::Col2Im(frames, cin, width, dcol.data(), nx->GradBuffer());
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> MaxPool1d(const Tensor<T>& x, std::size_t width) {
  if (x.rank() != 2 || width == 0) throw ShapeError("maxpool1d expects frames x channels");
  const std::size_t frames = x.dim(0);
  const std::size_t channels = x.dim(1);
  auto node = MakeNode<T>(x.shape(), "maxpool1d", {&x});
  auto winner = std::make_shared<std::vector<std::size_t>>(x.size());
  const T* v = x.data().data();
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t stop = std::min(frames, t + width);
    for (std::size_t c = 0; c < channels; ++c) {
      std::size_t best = t * channels + c;
      for (std::size_t s = t + 1; s < stop; ++s) {
        if (v[s * channels + c] > v[best]) best = s * channels + c;
      }
      node->value[t * channels + c] = v[best];
      (*winner)[t * channels + c] = best;
    }
  }
  if (node->requires_grad) {
    node->backward = [winner](Node<T>& self) {
      T* g = self.inputs[0]->GradBuffer();
      for (std::size_t i = 0; i < self.grad.size(); ++i) g[(*winner)[i]] += self.grad[i];
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> BatchNorm1d(const Tensor<T>& x, const Tensor<T>& gamma, const Tensor<T>& beta,
                      Tensor<T>& running_mean, Tensor<T>& running_var, Mode mode, T momentum,
                      T eps) {
  if (x.rank() != 2) throw ShapeError("batchnorm1d expects frames x channels, got " +
                                      ShapeString(x.shape()));
  const std::size_t frames = x.dim(0);
  const std::size_t channels = x.dim(1);
  if (gamma.size() != channels || beta.size() != channels || running_mean.size() != channels ||
      running_var.size() != channels) {
    ThrowShape("batchnorm1d", x.shape(), gamma.shape());
  }
  auto node = MakeNode<T>(x.shape(), "batchnorm1d", {&x, &gamma, &beta});
  // Per-channel normalized input and inverse deviation, kept for backward.
  auto xhat = std::make_shared<std::vector<T>>(x.size());
  auto inv_std = std::make_shared<std::vector<T>>(channels);
  const T* v = x.data().data();
  const bool train = mode == Mode::kTrain;
  for (std::size_t c = 0; c < channels; ++c) {
    T mean;
    T var;
    if (train) {
      T sum = 0;
      for (std::size_t t = 0; t < frames; ++t) sum += v[t * channels + c];
      mean = sum / T(frames);
      T sq = 0;
      for (std::size_t t = 0; t < frames; ++t) {
        const T d = v[t * channels + c] - mean;
        sq += d * d;
      }
      var = sq / T(frames);
      running_mean.mutable_data()[c] = momentum * running_mean[c] + (T(1) - momentum) * mean;
      running_var.mutable_data()[c] = momentum * running_var[c] + (T(1) - momentum) * var;
    } else {
      mean = running_mean[c];
      var = running_var[c];
    }
    (*inv_std)[c] = T(1) / std::sqrt(var + eps);
    for (std::size_t t = 0; t < frames; ++t) {
      const std::size_t i = t * channels + c;
      (*xhat)[i] = (v[i] - mean) * (*inv_std)[c];
      node->value[i] = gamma[c] * (*xhat)[i] + beta[c];
    }
  }
  if (node->requires_grad) {
    node->backward = [xhat, inv_std, frames, channels, train](Node<T>& self) {
      auto& nx = self.inputs[0];
      auto& ng = self.inputs[1];
      auto& nb = self.inputs[2];
      const T* dy = self.grad.data();
      for (std::size_t c = 0; c < channels; ++c) {
        T sum_dy = 0;
        T sum_dy_xhat = 0;
        for (std::size_t t = 0; t < frames; ++t) {
          const std::size_t i = t * channels + c;
          sum_dy += dy[i];
          sum_dy_xhat += dy[i] * (*xhat)[i];
        }
        if (Wants(ng)) ng->GradBuffer()[c] += sum_dy_xhat;
        if (Wants(nb)) nb->GradBuffer()[c] += sum_dy;
        if (Wants(nx)) {
          T* g = nx->GradBuffer();
          const T scale = ng->value[c] * (*inv_std)[c];
          const T mean_dy = sum_dy / T(frames);
          const T mean_dy_xhat = sum_dy_xhat / T(frames);
          for (std::size_t t = 0; t < frames; ++t) {
            const std::size_t i = t * channels + c;
            g[i] += train ? scale * (dy[i] - mean_dy - (*xhat)[i] * mean_dy_xhat) : scale * dy[i];
          }
        }
      }
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Dropout(const Tensor<T>& x, T p, Mode mode, CounterRng& rng) {
  if (p < T(0) || p >= T(1)) throw ArgumentError("dropout probability must lie in [0, 1)");
  if (mode == Mode::kInfer || p == T(0)) return x;
  auto node = MakeNode<T>(x.shape(), "dropout", {&x});
  auto mask = std::make_shared<std::vector<T>>(x.size());
  const T keep_scale = T(1) / (T(1) - p);
  for (std::size_t i = 0; i < x.size(); ++i) {
    (*mask)[i] = rng.Uniform() >= static_cast<double>(p) ? keep_scale : T(0);
    node->value[i] = x[i] * (*mask)[i];
  }
  if (node->requires_grad) {
    node->backward = [mask](Node<T>& self) {
      T* g = self.inputs[0]->GradBuffer();
      for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += self.grad[i] * (*mask)[i];
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Sum(const Tensor<T>& a) {
  auto node = MakeNode<T>({}, "sum", {&a});
  T total = 0;
  for (T v : a.data()) total += v;
  node->value[0] = total;
  if (node->requires_grad) {
    node->backward = [](Node<T>& self) {
      Node<T>& in = *self.inputs[0];
      T* g = in.GradBuffer();
      for (std::size_t i = 0; i < in.value.size(); ++i) g[i] += self.grad[0];
    };
  }
  return Tensor<T>(node);
}

template <typename T>
Tensor<T> Mean(const Tensor<T>& a) {
  if (a.size() == 0) throw ArgumentError("mean of an empty tensor");
  return Scale(Sum(a), T(1) / T(a.size()));
}

#define VCSEQ_INSTANTIATE_OPS(T)                                                              \
  template Tensor<T> MatMul(const Tensor<T>&, const Tensor<T>&);                              \
  template Tensor<T> Add(const Tensor<T>&, const Tensor<T>&);                                 \
  template Tensor<T> Sub(const Tensor<T>&, const Tensor<T>&);                                 \
  template Tensor<T> Mul(const Tensor<T>&, const Tensor<T>&);                                 \
  template Tensor<T> Scale(const Tensor<T>&, T);                                              \
  template Tensor<T> Sigmoid(const Tensor<T>&);                                               \
  template Tensor<T> Tanh(const Tensor<T>&);                                                  \
  template Tensor<T> Relu(const Tensor<T>&);                                                  \
  template Tensor<T> Abs(const Tensor<T>&);                                                   \
  template Tensor<T> Concat(const std::vector<Tensor<T>>&, std::size_t);                      \
  template Tensor<T> Slice(const Tensor<T>&, std::size_t, std::size_t, std::size_t);          \
  template Tensor<T> Reshape(const Tensor<T>&, const Shape&);                                 \
  template Tensor<T> Transpose(const Tensor<T>&);                                             \
  template Tensor<T> Softmax(const Tensor<T>&, T);                                            \
  template Tensor<T> Conv1d(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&);            \
  template Tensor<T> MaxPool1d(const Tensor<T>&, std::size_t);                                \
  template Tensor<T> BatchNorm1d(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&,        \
                                 Tensor<T>&, Tensor<T>&, Mode, T, T);                         \
  template Tensor<T> Dropout(const Tensor<T>&, T, Mode, CounterRng&);                         \
  template Tensor<T> Sum(const Tensor<T>&);                                                   \
  template Tensor<T> Mean(const Tensor<T>&);

VCSEQ_INSTANTIATE_OPS(float)
VCSEQ_INSTANTIATE_OPS(double)

}  // namespace vcseq::ad
