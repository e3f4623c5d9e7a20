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

#include "vcseq/dsp/mel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "vcseq/common/error.hpp"
#include "vcseq/kernels/gemm.hpp"

namespace vcseq::dsp {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank BuildMelFilterbank(std::size_t n_fft, std::size_t n_mels, std::uint32_t sample_rate,
                                 double fmin, double fmax) {
  if (n_mels == 0) throw ArgumentError("n_mels must be positive");
  if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0) throw ArgumentError("n_fft must be a power of two");
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0)) {
    throw ArgumentError("filterbank range must satisfy 0 <= fmin < fmax <= sample_rate/2");
  }
  const std::size_t bins = n_fft / 2 + 1;
  MelFilterbank fb;
  fb.sample_rate = sample_rate;
  fb.fmin = fmin;
  fb.fmax = fmax;
  fb.weights = Matrix<double>(n_mels, bins);

  const double mel_lo = HzToMel(fmin);
  const double mel_hi = HzToMel(fmax);
  std::vector<double> edges(n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                    static_cast<double>(n_mels + 1));
  }
  fb.centers.assign(edges.begin() + 1, edges.end() - 1);

  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(n_fft);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = edges[m], c = edges[m + 1], hi = edges[m + 2];
    double row_sum = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      const double w = std::max(0.0, std::min((f - lo) / (c - lo), (hi - f) / (hi - c)));
      fb.weights(m, k) = w;
      row_sum += w;
    }
    if (row_sum <= 0.0) {
      throw ArgumentError("mel filter " + std::to_string(m) +
                          " covers no FFT bin; use fewer mels or a larger n_fft");
    }
  }

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> w(fb.weights.data.data(), n_mels, bins);
  const RowMajor pinv = w.completeOrthogonalDecomposition().pseudoInverse();
  fb.pseudo_inverse = Matrix<double>(bins, n_mels);
  Eigen::Map<RowMajor>(fb.pseudo_inverse.data.data(), bins, n_mels) = pinv;
  return fb;
}

MelFilterbank BuildMelFilterbank(const AudioConfig& cfg) {
  return BuildMelFilterbank(cfg.n_fft, cfg.n_mels, cfg.sample_rate, cfg.fmin, cfg.fmax);
}

FrameParams FrameParamsFrom(const AudioConfig& cfg) { return {cfg.n_fft, cfg.hop, cfg.win}; }

MelSpectrogram LogMelSpectrogram(const AudioBuffer& audio, const MelFilterbank& fb,
                                 const FrameParams& params) {
  MelSpectrogram mel;
  mel.sample_rate = audio.sample_rate;
  if (params.bins() != fb.weights.cols) throw ShapeError("filterbank does not match n_fft");
  if (audio.samples.empty()) {
    mel.frames = Matrix<float>(0, fb.n_mels());
    return mel;
  }
  const LinearSpectrogram spec = Stft(audio, params);
  const std::size_t frames = spec.magnitudes.rows;
  std::vector<double> energies(frames * fb.n_mels(), 0.0);
  kernels::GemmNT<double>(frames, fb.n_mels(), params.bins(), spec.magnitudes.data.data(),
                          fb.weights.data.data(), energies.data());
  mel.frames = Matrix<float>(frames, fb.n_mels());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    mel.frames.data[i] = static_cast<float>(std::log(std::max(energies[i], kLogFloor)));
  }
  return mel;
}

namespace {
MelSpectrogram Affine(const MelSpectrogram& mel, double scale, double shift) {
  MelSpectrogram out = mel;
  for (auto& v : out.frames.data) v = static_cast<float>(v * scale + shift);
  return out;
}
double Range(const MelStats& s) {
  if (!(s.max > s.min)) throw ArgumentError("mel statistics need max > min");
  return s.max - s.min;
}
}  // namespace

MelSpectrogram Normalize(const MelSpectrogram& mel, const MelStats& stats) {
  const double r = Range(stats);
  return Affine(mel, 1.0 / r, -stats.min / r);
}

MelSpectrogram Denormalize(const MelSpectrogram& mel, const MelStats& stats) {
  return Affine(mel, Range(stats), stats.min);
}

double SilenceValue(const MelStats& stats) {
  return (std::log(kLogFloor) - stats.min) / Range(stats);
}

MelStats ComputeStats(const std::vector<MelSpectrogram>& corpus) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& mel : corpus) {
    for (float v : mel.frames.data) {
      lo = std::min(lo, static_cast<double>(v));
      hi = std::max(hi, static_cast<double>(v));
    }
  }
  if (!std::isfinite(lo)) return {std::log(kLogFloor), std::log(kLogFloor) + 1.0};
  if (hi <= lo) hi = lo + 1.0;
  return {lo, hi};
}

MelSpectrogram ComputeMelSpectrogram(const AudioBuffer& audio, const MelFilterbank& fb,
                                     const FrameParams& params, const MelStats& stats) {
  if (audio.sample_rate != fb.sample_rate) {
    throw ArgumentError("audio at " + std::to_string(audio.sample_rate) +
                        " Hz; resample to " + std::to_string(fb.sample_rate) + " Hz first");
  }
  return Normalize(LogMelSpectrogram(audio, fb, params), stats);
}

LinearSpectrogram MelEnergiesToLinear(const Matrix<double>& energies, const MelFilterbank& fb,
                                      const FrameParams& params) {
  if (energies.cols != fb.n_mels()) throw ShapeError("mel width does not match filterbank");
  LinearSpectrogram out;
  out.params = params;
  const std::size_t bins = fb.weights.cols;
  out.magnitudes = Matrix<double>(energies.rows, bins);
  kernels::GemmNT<double>(energies.rows, bins, fb.n_mels(), energies.data.data(),
                          fb.pseudo_inverse.data.data(), out.magnitudes.data.data());
  for (auto& v : out.magnitudes.data) v = std::max(v, 0.0);
  return out;
}

LinearSpectrogram MelToLinear(const MelSpectrogram& mel, const MelFilterbank& fb,
                              const FrameParams& params, const MelStats& stats) {
  const MelSpectrogram log_mel = Denormalize(mel, stats);
  Matrix<double> energies(log_mel.frames.rows, log_mel.frames.cols);
  for (std::size_t i = 0; i < energies.data.size(); ++i) {
    energies.data[i] = std::exp(static_cast<double>(log_mel.frames.data[i]));
  }
  return MelEnergiesToLinear(energies, fb, params);
}

}  // namespace vcseq::dsp
