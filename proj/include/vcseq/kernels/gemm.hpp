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

namespace vcseq::kernels {

// Row-major dense products. All variants accumulate into C; callers zero C
// first when they want an assignment. Every output element is reduced in
// the same order by the serial and the OpenMP variants, so the two agree
// bit-for-bit regardless of thread count.
//
//   NN: C[m x n] += A[m x k]   * B[k x n]
//   TN: C[m x n] += A[k x m]^T * B[k x n]
//   NT: C[m x n] += A[m x k]   * B[n x k]^T

namespace serial {
template <typename T>
void GemmNN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
template <typename T>
void GemmTN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
template <typename T>
void GemmNT(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
}  // namespace serial

namespace parallel {
template <typename T>
void GemmNN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
template <typename T>
void GemmTN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
template <typename T>
void GemmNT(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
}  // namespace parallel

/// Work (m*n*k) above which the dispatchers below hand off to the OpenMP
/// variants. Small recurrent-step products stay serial.
inline constexpr std::size_t kParallelGemmWork = 1u << 18;

template <typename T>
void GemmNN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
template <typename T>
void GemmTN(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);
template <typename T>
void GemmNT(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);

/// Threads available to the parallel kernels (1 when built without OpenMP).
int MaxThreads();
void SetThreads(int n);

}  // namespace vcseq::kernels
