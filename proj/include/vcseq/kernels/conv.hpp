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

// Column layout for same-length 1-D convolution over a (frames x channels)
// signal: col[t][c * width + k] = x[t + k - width / 2][c], zero outside.

namespace serial {
template <typename T>
void Im2Col(std::size_t frames, std::size_t channels, std::size_t width, const T* x, T* col);
template <typename T>
void Col2Im(std::size_t frames, std::size_t channels, std::size_t width, const T* col, T* dx);
}  // namespace serial

namespace parallel {
template <typename T>
void Im2Col(std::size_t frames, std::size_t channels, std::size_t width, const T* x, T* col);
template <typename T>
void Col2Im(std::size_t frames, std::size_t channels, std::size_t width, const T* col, T* dx);
}  // namespace parallel

template <typename T>
void Im2Col(std::size_t frames, std::size_t channels, std::size_t width, const T* x, T* col);
/// Accumulates (+=) the column gradient back onto dx.
template <typename T>
void Col2Im(std::size_t frames, std::size_t channels, std::size_t width, const T* col, T* dx);

}  // namespace vcseq::kernels
