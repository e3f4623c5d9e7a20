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
#include <vector>

#include "vcseq/dsp/audio.hpp"
#include "vcseq/dsp/stft.hpp"

namespace vcseq::dsp {

enum class PhaseInit {
  kPhaseGradient,  // integrate phase derivatives estimated from the magnitudes
  kRandom,         // uniform phase from the seed
};

struct GriffinLimOptions {
  PhaseInit init = PhaseInit::kPhaseGradient;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;  // 0: (n_frames - 1) * hop
};

struct GriffinLimResult {
  AudioBuffer audio;
  /// distances[k] = SpectralDistance(|STFT(x_k)|, target) for k = 0..n_iters.
  std::vector<double> distances;
};

/// Alternating projections x_{k+1} = ISTFT(M * phase(STFT(x_k))), starting
/// from x_0 = ISTFT(M * initial phase). Every iteration is a least-squares
/// projection, so the distances never increase.
GriffinLimResult GriffinLim(const LinearSpectrogram& target, std::size_t n_iters,
                            std::uint32_t sample_rate, const GriffinLimOptions& opts = {});

/// Phase estimate from magnitudes alone, treating the Hann window as a
/// Gaussian of matching width and integrating the phase gradient outward
/// from the strongest coefficients. Returned in the analysis convention of
/// StftComplex (frame-start reference).
Matrix<double> PhaseGradientInit(const Matrix<double>& magnitudes, const FrameParams& params);

}  // namespace vcseq::dsp
