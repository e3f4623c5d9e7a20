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

#include "vcseq/dsp/mel.hpp"

namespace vcseq::dsp {

// Mel feature file: "MELF", u32 version (1), u32 n_frames, u32 n_mels,
// u32 sample_rate, then n_frames * n_mels float32, frame-major, all
// little-endian.
inline constexpr std::uint32_t kMelfVersion = 1;

std::vector<std::uint8_t> EncodeMelf(const MelSpectrogram& mel);
MelSpectrogram DecodeMelf(const std::vector<std::uint8_t>& bytes);
void WriteMelf(const MelSpectrogram& mel, const std::string& path);
MelSpectrogram ReadMelf(const std::string& path);

}  // namespace vcseq::dsp
