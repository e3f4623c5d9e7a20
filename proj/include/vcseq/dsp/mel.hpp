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

#include "vcseq/config.hpp"
#include "vcseq/dsp/audio.hpp"
#include "vcseq/dsp/matrix.hpp"
#include "vcseq/dsp/stft.hpp"

namespace vcseq::dsp {

inline constexpr double kLogFloor = 1e-5;

double HzToMel(double hz);  // 2595 log10(1 + hz / 700)
double MelToHz(double mel);

struct MelFilterbank {
  Matrix<double> weights;        // n_mels x (n_fft/2 + 1)
  Matrix<double> pseudo_inverse; // (n_fft/2 + 1) x n_mels
  std::vector<double> centers;   // peak frequency of each filter, Hz
  std::uint32_t sample_rate = 22050;
  double fmin = 0.0;
  double fmax = 8000.0;

  std::size_t n_mels() const { return weights.rows; }
};

/// Triangular filters with centres equally spaced on the mel scale.
MelFilterbank BuildMelFilterbank(std::size_t n_fft, std::size_t n_mels, std::uint32_t sample_rate,
                                 double fmin, double fmax);
MelFilterbank BuildMelFilterbank(const AudioConfig& cfg);

/// Corpus-wide range of log-mel values used for [0, 1] scaling.
struct MelStats {
  double min = 0.0;
  double max = 1.0;
};

/// Log-compressed mel energies (n_frames x n_mels) plus the rate they came from.
struct MelSpectrogram {
  Matrix<float> frames;
  std::uint32_t sample_rate = 22050;

  std::size_t n_frames() const { return frames.rows; }
  std::size_t n_mels() const { return frames.cols; }
};

FrameParams FrameParamsFrom(const AudioConfig& cfg);

/// log(max(fb . |STFT|, floor)), not normalized. Empty audio gives 0 frames.
MelSpectrogram LogMelSpectrogram(const AudioBuffer& audio, const MelFilterbank& fb,
                                 const FrameParams& params);

/// (x - min) / (max - min) and its inverse.
MelSpectrogram Normalize(const MelSpectrogram& mel, const MelStats& stats);
MelSpectrogram Denormalize(const MelSpectrogram& mel, const MelStats& stats);
/// The value silence maps to after normalization.
double SilenceValue(const MelStats& stats);
MelStats ComputeStats(const std::vector<MelSpectrogram>& corpus);

/// Normalized log-mel; audio must already be at the filterbank's rate.
MelSpectrogram ComputeMelSpectrogram(const AudioBuffer& audio, const MelFilterbank& fb,
                                     const FrameParams& params, const MelStats& stats);

/// Linear magnitudes from mel energies (not log): pseudo-inverse, clamped at 0.
LinearSpectrogram MelEnergiesToLinear(const Matrix<double>& energies, const MelFilterbank& fb,
                                      const FrameParams& params);
/// Denormalizes and exponentiates a normalized log-mel, then inverts it.
LinearSpectrogram MelToLinear(const MelSpectrogram& mel, const MelFilterbank& fb,
                              const FrameParams& params, const MelStats& stats);

}  // namespace vcseq::dsp
