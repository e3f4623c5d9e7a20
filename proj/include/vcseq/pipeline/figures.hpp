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

#include <cstdint>
#include <string>
#include <vector>

#include "vcseq/dsp/matrix.hpp"

namespace vcseq::pipeline {

/// One matrix row per line, comma separated, shortest round-trip decimals.
std::string MatrixToCsv(const dsp::Matrix<float>& m);
dsp::Matrix<float> MatrixFromCsv(const std::string& text);

/// Binary 8-bit PGM (P5): pixel = round(255 * clamp(value, 0, 1)).
std::vector<std::uint8_t> EncodePgm(const dsp::Matrix<float>& m);

/// Spectrogram image: time left to right, low mel bins at the bottom.
dsp::Matrix<float> MelImage(const dsp::Matrix<float>& frames);

void WriteText(const std::string& path, const std::string& text);

}  // namespace vcseq::pipeline
