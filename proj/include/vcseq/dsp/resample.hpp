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
#include <cstdint>

#include "vcseq/dsp/audio.hpp"

namespace vcseq::dsp {

struct ResampleOptions {
  std::size_t zero_crossings = 16;  // sinc lobes on each side of the centre tap
  double kaiser_beta = 8.6;
  double rolloff = 0.95;  // cutoff as a fraction of the lower Nyquist rate
};

/// Output length for `n` samples converted between the two rates:
/// round(n * target / source).
std::size_t ResampledLength(std::size_t n, std::uint32_t source_rate, std::uint32_t target_rate);

/// Band-limited Kaiser-windowed sinc interpolation. Equal rates return the
/// input unchanged.
AudioBuffer Resample(const AudioBuffer& audio, std::uint32_t target_rate,
                     const ResampleOptions& opts = {});

}  // namespace vcseq::dsp
