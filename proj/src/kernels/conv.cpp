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

#include "vcseq/kernels/conv.hpp"

#include <omp.h>

#include <cstddef>

namespace vcseq::kernels {
namespace {

constexpr std::size_t kParallelConvWork = 1u << 16;

template <typename T>
inline void Im2ColRow(std::size_t t, std::size_t frames, std::size_t channels, std::size_t width,
                      const T* x, T* col) {
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(width / 2);
  T* row = col + t * channels * width;
  for (std::size_t k = 0; k < width; ++k) {
    const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t + k) - pad;
    const bool inside = src >= 0 && src < static_cast<std::ptrdiff_t>(frames);
    for (std::size_t c = 0; c < channels; ++c) {
      row[c * width + k] = inside ? x[static_cast<std::size_t>(src) * channels + c] : T(0);
    }
  }
}

// Gathers every column entry that reads x[t], so each dx row has one writer.
template <typename T>
inline void Col2ImRow(std::size_t t, std::size_t frames, std::size_t channels, std::size_t width,
                      const T* col, T* dx) {
  const std::ptrdiff_t pad = static_cast<std::ptrdiff_t>(width / 2);
  T* out = dx + t * channels;
  for (std::size_t k = 0; k < width; ++k) {
    const std::ptrdiff_t dst = static_cast<std::ptrdiff_t>(t) + pad - static_cast<std::ptrdiff_t>(k);
    if (dst < 0 || dst >= static_cast<std::ptrdiff_t>(frames)) continue;
    const T* row = col + static_cast<std::size_t>(dst) * channels * width;
    for (std::size_t c = 0; c < channels; ++c) out[c] += row[c * width + k];
  }
}

}  // namespace

namespace serial {
template <typename T>
void Im2Col(std::size_t frames, std::size_t channels, std::size_t width, const T* x, T* col) {
  for (std::size_t t = 0; t < frames; ++t) Im2ColRow(t, frames, channels, width, x, col);
}
template <typename T>
void Col2Im(std::size_t frames, std::size_t channels, std::size_t width, const T* col, T* dx) {
  for (std::size_t t = 0; t < frames; ++t) Col2ImRow(t, frames, channels, width, col, dx);
}
}  // namespace serial

namespace parallel {
template <typename T>
void Im2Col(std::size_t frames, std::size_t channels, std::size_t width, const T* x, T* col) {
  const auto n = static_cast<std::ptrdiff_t>(frames);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < n; ++t)
    Im2ColRow(static_cast<std::size_t>(t), frames, channels, width, x, col);
}
template <typename T>
void Col2Im(std::size_t frames, std::size_t channels, std::size_t width, const T* col, T* dx) {
  const auto n = static_cast<std::ptrdiff_t>(frames);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < n; ++t)
    Col2ImRow(static_cast<std::size_t>(t), frames, channels, width, col, dx);
}
}  // namespace parallel

template <typename T>
void Im2Col(std::size_t frames, std::size_t channels, std::size_t width, const T* x, T* col) {
  if (frames * channels * width >= kParallelConvWork && omp_get_max_threads() > 1) {
    parallel::Im2Col(frames, channels, width, x, col);
  } else {
    serial::Im2Col(frames, channels, width, x, col);
  }
}

template <typename T>
void Col2Im(std::size_t frames, std::size_t channels, std::size_t width, const T* col, T* dx) {
  if (frames * channels * width >= kParallelConvWork && omp_get_max_threads() > 1) {
    parallel::Col2Im(frames, channels, width, col, dx);
  } else {
    serial::Col2Im(frames, channels, width, col, dx);
  }
}

#define VCSEQ_INSTANTIATE_CONV(T)                                                          \
  template void serial::Im2Col<T>(std::size_t, std::size_t, std::size_t, const T*, T*);   \
  template void serial::Col2Im<T>(std::size_t, std::size_t, std::size_t, const T*, T*);   \
  template void parallel::Im2Col<T>(std::size_t, std::size_t, std::size_t, const T*, T*); \
  template void parallel::Col2Im<T>(std::size_t, std::size_t, std::size_t, const T*, T*); \
  template void Im2Col<T>(std::size_t, std::size_t, std::size_t, const T*, T*);           \
  template void Col2Im<T>(std::size_t, std::size_t, std::size_t, const T*, T*);

VCSEQ_INSTANTIATE_CONV(float)
VCSEQ_INSTANTIATE_CONV(double)

}  // namespace vcseq::kernels
