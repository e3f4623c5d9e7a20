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

#include "vcseq/dsp/stft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "vcseq/common/error.hpp"
#include "vcseq/kernels/gemm.hpp"

namespace vcseq::dsp {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kParallelFrames = 16;

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are made once per size under a lock and shared afterwards.
struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  ~Plans() {
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
};

const Plans& PlansFor(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<Plans>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<Plans>();
    auto* real = fftw_alloc_real(n);
    auto* cplx = fftw_alloc_complex(n / 2 + 1);
    const int ni = static_cast<int>(n);
    slot->forward = fftw_plan_dft_r2c_1d(ni, real, cplx, FFTW_ESTIMATE);
    slot->inverse = fftw_plan_dft_c2r_1d(ni, cplx, real, FFTW_ESTIMATE);
    fftw_free(real);
    fftw_free(cplx);
  }
  return *slot;
}

// Per-thread FFT scratch with FFTW's alignment.
struct Scratch {
  double* real;
  fftw_complex* cplx;
  explicit Scratch(std::size_t n)
      : real(fftw_alloc_real(n)), cplx(fftw_alloc_complex(n / 2 + 1)) {}
  ~Scratch() {
    fftw_free(real);
    fftw_free(cplx);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

void AnalyzeFrame(std::span<const double> x, const std::vector<double>& window,
                  const FrameParams& p, std::size_t t, const Plans& plans, Scratch& s,
                  std::complex<double>* out) {
  const std::size_t n = x.size();
  const auto start = static_cast<std::ptrdiff_t>(t * p.hop) - static_cast<std::ptrdiff_t>(p.n_fft / 2);
  for (std::size_t k = 0; k < p.n_fft; ++k) {
    s.real[k] = n == 0 ? 0.0 : window[k] * x[ReflectIndex(start + static_cast<std::ptrdiff_t>(k), n)];
  }
  fftw_execute_dft_r2c(plans.forward, s.real, s.cplx);
  for (std::size_t b = 0; b < p.bins(); ++b) out[b] = {s.cplx[b][0], s.cplx[b][1]};
}

void SynthesizeFrame(const std::complex<double>* in, const FrameParams& p, const Plans& plans,
                     Scratch& s, double* out) {
  for (std::size_t b = 0; b < p.bins(); ++b) {
    s.cplx[b][0] = in[b].real();
    s.cplx[b][1] = in[b].imag();
  }
  fftw_execute_dft_c2r(plans.inverse, s.cplx, s.real);
  const double scale = 1.0 / static_cast<double>(p.n_fft);
  for (std::size_t k = 0; k < p.n_fft; ++k) out[k] = s.real[k] * scale;
}

ComplexSpectrogram StftImpl(std::span<const double> x, const FrameParams& p, bool par) {
  p.Validate();
  const std::size_t frames = FrameCount(x.size(), p);
  ComplexSpectrogram spec;
  spec.params = p;
  spec.bins = Matrix<std::complex<double>>(frames, p.bins());
  const auto window = AnalysisWindow(p);
  const Plans& plans = PlansFor(p.n_fft);
#pragma omp parallel if (par)
  {
    Scratch s(p.n_fft);
#pragma omp for schedule(static)
    for (std::size_t t = 0; t < frames; ++t) {
      AnalyzeFrame(x, window, p, t, plans, s, spec.bins.row(t).data());
    }
  }
  return spec;
}

// Exact least-squares inverse. Each frame's inverse DFT y_t is placed back
// under the window; the minimiser of sum_t ||w * P_t x - y_t||^2 is
// x[i] = sum w y / sum w^2 over every (frame, tap) that reads sample i,
// including taps that read it through the reflect padding.
std::vector<double> IstftImpl(const ComplexSpectrogram& spec, std::size_t n, bool par) {
  const FrameParams& p = spec.params;
  p.Validate();
  if (spec.bins.cols != p.bins()) throw ShapeError("spectrogram width does not match n_fft");
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  const std::size_t frames = spec.bins.rows;
  const auto window = AnalysisWindow(p);
  const Plans& plans = PlansFor(p.n_fft);

  std::vector<double> time(frames * p.n_fft);
#pragma omp parallel if (par)
  {
    Scratch s(p.n_fft);
#pragma omp for schedule(static)
    for (std::size_t t = 0; t < frames; ++t) {
      SynthesizeFrame(spec.bins.row(t).data(), p, plans, s, time.data() + t * p.n_fft);
    }
  }

  std::vector<double> den(n, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    const auto start =
        static_cast<std::ptrdiff_t>(t * p.hop) - static_cast<std::ptrdiff_t>(p.n_fft / 2);
    const double* y = time.data() + t * p.n_fft;
    for (std::size_t k = 0; k < p.n_fft; ++k) {
      if (window[k] == 0.0) continue;
      const std::size_t i = ReflectIndex(start + static_cast<std::ptrdiff_t>(k), n);
      out[i] += window[k] * y[k];
      den[i] += window[k] * window[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = den[i] > 1e-12 ? out[i] / den[i] : 0.0;
  return out;
}

bool UseParallel(std::size_t frames) {
  return frames >= kParallelFrames && kernels::MaxThreads() > 1;
}

}  // namespace

void FrameParams::Validate() const {
  if (n_fft < 2 || (n_fft & (n_fft - 1)) != 0) throw ArgumentError("n_fft must be a power of two");
  if (hop == 0 || hop > win || win > n_fft) throw ArgumentError("need 0 < hop <= win <= n_fft");
}

std::size_t FrameCount(std::size_t n_samples, const FrameParams& params) {
  return 1 + n_samples / params.hop;
}

std::vector<double> AnalysisWindow(const FrameParams& params) {
  std::vector<double> w(params.n_fft, 0.0);
  const std::size_t offset = (params.n_fft - params.win) / 2;
  for (std::size_t i = 0; i < params.win; ++i) {
    w[offset + i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) /
                                         static_cast<double>(params.win));
  }
  return w;
}

std::size_t ReflectIndex(std::ptrdiff_t i, std::size_t n) {
  if (n == 1) return 0;
  const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
  i %= period;
  if (i < 0) i += period;
  if (i >= static_cast<std::ptrdiff_t>(n)) i = period - i;
  return static_cast<std::size_t>(i);
}

namespace serial {
ComplexSpectrogram StftComplex(std::span<const double> signal, const FrameParams& params) {
  return StftImpl(signal, params, false);
}
std::vector<double> Istft(const ComplexSpectrogram& spec, std::size_t n_samples) {
  return IstftImpl(spec, n_samples, false);
}
}  // namespace serial

namespace parallel {
ComplexSpectrogram StftComplex(std::span<const double> signal, const FrameParams& params) {
  return StftImpl(signal, params, true);
}
std::vector<double> Istft(const ComplexSpectrogram& spec, std::size_t n_samples) {
  return IstftImpl(spec, n_samples, true);
}
}  // namespace parallel

ComplexSpectrogram StftComplex(std::span<const double> signal, const FrameParams& params) {
  return StftImpl(signal, params, UseParallel(FrameCount(signal.size(), params)));
}

std::vector<double> Istft(const ComplexSpectrogram& spec, std::size_t n_samples) {
  return IstftImpl(spec, n_samples, UseParallel(spec.bins.rows));
}

Matrix<double> Magnitudes(const ComplexSpectrogram& spec) {
  Matrix<double> m(spec.bins.rows, spec.bins.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = std::abs(spec.bins.data[i]);
  return m;
}

LinearSpectrogram Stft(const AudioBuffer& audio, const FrameParams& params) {
  LinearSpectrogram out;
  out.params = params;
  out.magnitudes = Magnitudes(StftComplex(audio.samples, params));
  return out;
}

namespace {
double TwoSidedWeight(std::size_t bin, std::size_t cols) {
  return bin == 0 || bin + 1 == cols ? 1.0 : 2.0;
}
}  // namespace

double SpectralDistance(const Matrix<double>& a, const Matrix<double>& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw ShapeError("spectrogram shapes differ");
  double acc = 0.0;
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) {
      const double d = a(r, c) - b(r, c);
      acc += TwoSidedWeight(c, a.cols) * d * d;
    }
  }
  return std::sqrt(acc);
}

double SpectralNorm(const Matrix<double>& a) {
  double acc = 0.0;
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t c = 0; c < a.cols; ++c) acc += TwoSidedWeight(c, a.cols) * a(r, c) * a(r, c);
  }
  return std::sqrt(acc);
}

}  // namespace vcseq::dsp
