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

#include "vcseq/dsp/griffin_lim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>

#include "vcseq/common/error.hpp"
#include "vcseq/common/rng.hpp"

namespace vcseq::dsp {
namespace {

constexpr double kPi = std::numbers::pi;
// Hann of length L against exp(-pi t^2 / lambda): lambda = 0.25645 L^2.
constexpr double kHannLambda = 0.25645;
// Coefficients below this fraction of the peak get zero phase.
constexpr double kIntegrationTolerance = 1e-5;

}  // namespace

Matrix<double> PhaseGradientInit(const Matrix<double>& mag, const FrameParams& p) {
  const std::size_t frames = mag.rows, bins = mag.cols;
  Matrix<double> phase(frames, bins);
  if (mag.empty()) return phase;
  const double peak = *std::max_element(mag.data.begin(), mag.data.end());
  if (peak <= 0.0) return phase;

  // With window centre as the time origin, a Gaussian window of variance
  // sigma2 gives
  //   dphi/dt = omega + (1/sigma2) ds/domega,   dphi/domega = -sigma2 ds/dt
  // for s = log|X|.
  const double sigma2 = kHannLambda * static_cast<double>(p.win * p.win) / (2.0 * kPi);
  const double hop = static_cast<double>(p.hop);
  const double bin_w = 2.0 * kPi / static_cast<double>(p.n_fft);
  Matrix<double> logm(frames, bins);
  for (std::size_t i = 0; i < mag.data.size(); ++i) {
    logm.data[i] = std::log(std::max(mag.data[i], peak * 1e-10));
  }
  auto at = [&](std::ptrdiff_t t, std::ptrdiff_t b) {
    t = std::clamp<std::ptrdiff_t>(t, 0, static_cast<std::ptrdiff_t>(frames) - 1);
    b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    return logm(static_cast<std::size_t>(t), static_cast<std::size_t>(b));
  };
  Matrix<double> step_t(frames, bins), step_f(frames, bins);  // per hop, per bin
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t b = 0; b < bins; ++b) {
      const auto ti = static_cast<std::ptrdiff_t>(t), bi = static_cast<std::ptrdiff_t>(b);
      const double ds_dw = (at(ti, bi + 1) - at(ti, bi - 1)) / (2.0 * bin_w);
      const double ds_dt = (at(ti + 1, bi) - at(ti - 1, bi)) / (2.0 * hop);
      step_t(t, b) = hop * (bin_w * static_cast<double>(b) + ds_dw / sigma2);
      step_f(t, b) = -bin_w * sigma2 * ds_dt;
    }
  }

  // Trapezoidal integration in decreasing magnitude order; each unreached
  // region is seeded at its largest coefficient.
  const double tol = peak * kIntegrationTolerance;
  const std::size_t n = frames * bins;
  std::vector<char> done(n, 0);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (mag.data[i] < tol) {
      done[i] = 1;
    } else {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mag.data[a] > mag.data[b]; });
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item> heap;
  for (std::size_t seed : order) {
    if (done[seed]) continue;
    done[seed] = 1;
    heap.push({mag.data[seed], seed});
    while (!heap.empty()) {
      const std::size_t i = heap.top().second;
      heap.pop();
      const std::size_t t = i / bins, b = i % bins;
      auto visit = [&](std::size_t j, double delta) {
        if (done[j]) return;
        done[j] = 1;
        phase.data[j] = phase.data[i] + delta;
        heap.push({mag.data[j], j});
      };
      if (t + 1 < frames) visit(i + bins, 0.5 * (step_t.data[i] + step_t.data[i + bins]));
      if (t > 0) visit(i - bins, -0.5 * (step_t.data[i] + step_t.data[i - bins]));
      if (b + 1 < bins) visit(i + 1, 0.5 * (step_f.data[i] + step_f.data[i + 1]));
      if (b > 0) visit(i - 1, -0.5 * (step_f.data[i] + step_f.data[i - 1]));
    }
  }
  // Frames are analysed from their first sample, half a window before the
  // centre: a factor (-1)^b.
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t b = 0; b < bins; ++b) phase(t, b) += kPi * static_cast<double>(b);
  }
  return phase;
}

GriffinLimResult GriffinLim(const LinearSpectrogram& target, std::size_t n_iters,
                            std::uint32_t sample_rate, const GriffinLimOptions& opts) {
  const Matrix<double>& mag = target.magnitudes;
  const FrameParams& p = target.params;
  p.Validate();
  if (mag.cols != p.bins()) throw ShapeError("magnitude width does not match n_fft");
  for (double v : mag.data) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("magnitudes must be finite and >= 0");
  }
  std::size_t n_samples = opts.n_samples;
  if (n_samples == 0 && mag.rows > 0) n_samples = (mag.rows - 1) * p.hop;

  ComplexSpectrogram spec;
  spec.params = p;
  spec.bins = Matrix<std::complex<double>>(mag.rows, mag.cols);
  if (opts.init == PhaseInit::kPhaseGradient) {
    const Matrix<double> phase = PhaseGradientInit(mag, p);
    for (std::size_t i = 0; i < mag.data.size(); ++i) {
      spec.bins.data[i] = std::polar(mag.data[i], phase.data[i]);
    }
  } else {
    CounterRng rng = CounterRng(opts.seed).Split("griffin-lim");
    for (std::size_t i = 0; i < mag.data.size(); ++i) {
      spec.bins.data[i] = std::polar(mag.data[i], 2.0 * kPi * rng.Uniform());
    }
  }

  GriffinLimResult result;
  result.audio.sample_rate = sample_rate;
  std::vector<double> x = Istft(spec, n_samples);
  for (std::size_t k = 0;; ++k) {
    const ComplexSpectrogram est = StftComplex(x, p);
    if (est.bins.rows != mag.rows) {
      throw ShapeError("n_samples gives a different frame count than the target");
    }
    result.distances.push_back(SpectralDistance(Magnitudes(est), mag));
    if (k == n_iters) break;
    for (std::size_t i = 0; i < mag.data.size(); ++i) {
      const double a = std::abs(est.bins.data[i]);
      spec.bins.data[i] = a > 0.0 ? est.bins.data[i] * (mag.data[i] / a)
                                  : std::complex<double>(mag.data[i], 0.0);
    }
    x = Istft(spec, n_samples);
  }
  result.audio.samples = std::move(x);
  return result;
}

}  // namespace vcseq::dsp
