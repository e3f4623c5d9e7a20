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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "vcseq/dsp/audio.hpp"
#include "vcseq/dsp/matrix.hpp"

namespace vcseq::dsp {

struct FrameParams {
  std::size_t n_fft = 1024;
  std::size_t hop = 256;
  std::size_t win = 1024;

  std::size_t bins() const { return n_fft / 2 + 1; }
  void Validate() const;  // n_fft power of two, hop <= win <= n_fft
};

/// Frames for a signal of `n_samples`: 1 + floor(n_samples / hop).
std::size_t FrameCount(std::size_t n_samples, const FrameParams& params);

/// Periodic Hann window of length `win`, zero-padded and centred in n_fft.
std::vector<double> AnalysisWindow(const FrameParams& params);

/// Magnitudes, n_frames x (n_fft/2 + 1), all entries >= 0.
struct LinearSpectrogram {
  Matrix<double> magnitudes;
  FrameParams params;
};

struct ComplexSpectrogram {
  Matrix<std::complex<double>> bins;
  FrameParams params;
};

/// Centred frames: the signal is reflect-padded by n_fft/2 on both sides and
/// frame t starts at t * hop in padded coordinates.
ComplexSpectrogram StftComplex(std::span<const double> signal, const FrameParams& params);
LinearSpectrogram Stft(const AudioBuffer& audio, const FrameParams& params);
Matrix<double> Magnitudes(const ComplexSpectrogram& spec);

/// Least-squares inverse: the real signal of length `n_samples` whose STFT is
/// closest to `spec`. Padding reflections fold back onto their source samples.
std::vector<double> Istft(const ComplexSpectrogram& spec, std::size_t n_samples);

/// Frobenius distance over the full two-sided spectrum (interior bins of the
/// one-sided layout count twice).
double SpectralDistance(const Matrix<double>& a, const Matrix<double>& b);
double SpectralNorm(const Matrix<double>& a);

}  // namespace vcseq::dsp

namespace vcseq::dsp {

// Reference and OpenMP variants of the frame loops (one FFT per frame). The
// overlap-add in Istft stays serial in both, so results match bit-for-bit.
namespace serial {
ComplexSpectrogram StftComplex(std::span<const double> signal, const FrameParams& params);
std::vector<double> Istft(const ComplexSpectrogram& spec, std::size_t n_samples);
}  // namespace serial

namespace parallel {
ComplexSpectrogram StftComplex(std::span<const double> signal, const FrameParams& params);
std::vector<double> Istft(const ComplexSpectrogram& spec, std::size_t n_samples);
}  // namespace parallel

/// Index into a length-n signal for position i under mirror (reflect)
/// padding without edge repetition; n must be >= 1.
std::size_t ReflectIndex(std::ptrdiff_t i, std::size_t n);

}  // namespace vcseq::dsp
