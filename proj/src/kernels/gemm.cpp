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

#include "vcseq/kernels/gemm.hpp"

#include <omp.h>

namespace vcseq::kernels {
namespace {

template <typename T>
inline void RowNN(std::size_t i, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  T* ci = c + i * n;
  const T* ai = a + i * k;
  for (std::size_t p = 0; p < k; ++p) {
    const T av = ai[p];
    if (av == T(0)) continue;
    const T* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += av * bp[j];
  }
}

// Row i of C += sum_p A[p][i] * B[p].
template <typename T>
inline void RowTN(std::size_t i, std::size_t m, std::size_t n, std::size_t k, const T* a,
                  const T* b, T* c) {
  T* ci = c + i * n;
  for (std::size_t p = 0; p < k; ++p) {
    const T av = a[p * m + i];
    if (av == T(0)) continue;
    const T* bp = b + p * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] += av * bp[j];
  }
}

// Fixed eight-lane partial sums keep the reduction order independent of
// the compiler's vectorization choices.
template <typename T>
inline T Dot(const T* x, const T* y, std::size_t k) {
  T s[8] = {};
  std::size_t p = 0;
  for (; p + 8 <= k; p += 8) {
    for (int l = 0; l < 8; ++l) s[l] += x[p + l] * y[p + l];
  }
  for (; p < k; ++p) s[0] += x[p] * y[p];
  return ((s[0] + s[1]) + (s[2] + s[3])) + ((s[4] + s[5]) + (s[6] + s[7]));
}

template <typename T>
inline void RowNT(std::size_t i, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  T* ci = c + i * n;
  const T* ai = a + i * k;
  for (std::size_t j = 0; j < n; ++j) ci[j] += Dot(ai, b + j * k, k);
}

}  // namespace

namespace serial {

template <typename T>
void GemmNN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  for (std::size_t i = 0; i < m; ++i) RowNN(i, n, k, a, b, c);
}

template <typename T>
void GemmTN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  for (std::size_t i = 0; i < m; ++i) RowTN(i, m, n, k, a, b, c);
}

template <typename T>
void GemmNT(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  for (std::size_t i = 0; i < m; ++i) RowNT(i, n, k, a, b, c);
}

}  // namespace serial

namespace parallel {

template <typename T>
void GemmNN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) RowNN(static_cast<std::size_t>(i), n, k, a, b, c);
}

template <typename T>
void GemmTN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i)
    RowTN(static_cast<std::size_t>(i), m, n, k, a, b, c);
}

template <typename T>
void GemmNT(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) RowNT(static_cast<std::size_t>(i), n, k, a, b, c);
}

}  // namespace parallel

namespace {
inline bool UseParallel(std::size_t m, std::size_t n, std::size_t k) {
  return m > 1 && m * n * k >= kParallelGemmWork && omp_get_max_threads() > 1;
}
}  // namespace

template <typename T>
void GemmNN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  if (UseParallel(m, n, k)) {
    parallel::GemmNN(m, n, k, a, b, c);
  } else {
    serial::GemmNN(m, n, k, a, b, c);
  }
}

template <typename T>
void GemmTN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  if (UseParallel(m, n, k)) {
    parallel::GemmTN(m, n, k, a, b, c);
  } else {
    serial::GemmTN(m, n, k, a, b, c);
  }
}

template <typename T>
void GemmNT(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  if (UseParallel(m, n, k)) {
    parallel::GemmNT(m, n, k, a, b, c);
  } else {
    serial::GemmNT(m, n, k, a, b, c);
  }
}

int MaxThreads() { return omp_get_max_threads(); }
void SetThreads(int n) { omp_set_num_threads(n > 0 ? n : 1); }

#define VCSEQ_INSTANTIATE_GEMM(T)                                                          \
  template void serial::GemmNN<T>(std::size_t, std::size_t, std::size_t, const T*, const T*, \
                                  T*);                                                       \
  template void serial::GemmTN<T>(std::size_t, std::size_t, std::size_t, const T*, const T*, \
                                  T*);                                                       \
  template void serial::GemmNT<T>(std::size_t, std::size_t, std::size_t, const T*, const T*, \
                                  T*);                                                       \
  template void parallel::GemmNN<T>(std::size_t, std::size_t, std::size_t, const T*,         \
                                    const T*, T*);                                           \
  template void parallel::GemmTN<T>(std::size_t, std::size_t, std::size_t, const T*,         \
                                    const T*, T*);                                           \
  template void parallel::GemmNT<T>(std::size_t, std::size_t, std::size_t, const T*,         \
                                    const T*, T*);                                           \
  template void GemmNN<T>(std::size_t, std::size_t, std::size_t, const T*, const T*, T*);    \
  template void GemmTN<T>(std::size_t, std::size_t, std::size_t, const T*, const T*, T*);    \
  template void GemmNT<T>(std::size_t, std::size_t, std::size_t, const T*, const T*, T*);

VCSEQ_INSTANTIATE_GEMM(float)
VCSEQ_INSTANTIATE_GEMM(double)

}  // namespace vcseq::kernels
