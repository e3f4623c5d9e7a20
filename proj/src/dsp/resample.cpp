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

#include "vcseq/dsp/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vcseq/common/error.hpp"

namespace vcseq::dsp {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kMaxTablePhases = 4096;

double Sinc(double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); }

// Interpolation kernel sampled at the fractional offsets of one output phase.
// Taps cover input indices n0 - (half - 1) .. n0 + half, where n0 is the
// integer part of the output's position in input samples.
struct Kernel {
  double cutoff;      // relative to the input Nyquist rate
  double half_width;  // in input samples
  std::size_t half;   // taps on each side
  double beta;

  void Taps(double frac, double* taps) const {
    const double i0_beta = std::cyl_bessel_i(0.0, beta);
    double sum = 0.0;
    for (std::size_t j = 0; j < 2 * half; ++j) {
      const double tau = frac - (static_cast<double>(j) - static_cast<double>(half - 1));
      const double r = tau / half_width;
      double v = 0.0;
      if (std::abs(r) < 1.0) {
        v = cutoff * Sinc(cutoff * tau) * std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - r * r)) /
            i0_beta;
      }
      taps[j] = v;
      sum += v;
    }
    if (sum != 0.0) {
      for (std::size_t j = 0; j < 2 * half; ++j) taps[j] /= sum;  // unit DC gain
    }
  }
};

}  // namespace

std::size_t ResampledLength(std::size_t n, std::uint32_t source_rate, std::uint32_t target_rate) {
  if (source_rate == 0 || target_rate == 0) throw ArgumentError("sample rates must be positive");
  const unsigned __int128 num = static_cast<unsigned __int128>(n) * target_rate;
  return static_cast<std::size_t>((2 * num + source_rate) / (2 * static_cast<unsigned __int128>(source_rate)));
}

AudioBuffer Resample(const AudioBuffer& audio, std::uint32_t target_rate,
                     const ResampleOptions& opts) {
  if (target_rate == 0) throw ArgumentError("target rate must be positive");
  if (audio.sample_rate == 0) throw ArgumentError("source rate must be positive");
  if (audio.sample_rate == target_rate) return audio;
  if (opts.zero_crossings == 0) throw ArgumentError("zero_crossings must be positive");

  const std::uint64_t g = std::gcd(audio.sample_rate, target_rate);
  const std::uint64_t up = target_rate / g;
  const std::uint64_t down = audio.sample_rate / g;

  Kernel kernel;
  kernel.cutoff = opts.rolloff * std::min(1.0, static_cast<double>(up) / static_cast<double>(down));
  kernel.half_width = static_cast<double>(opts.zero_crossings) / kernel.cutoff;
  kernel.half = static_cast<std::size_t>(std::ceil(kernel.half_width));
  kernel.beta = opts.kaiser_beta;
  const std::size_t width = 2 * kernel.half;

  // Polyphase table, one row per output phase; very fine rate ratios fall
  // back to computing taps per sample.
  const bool tabulate = up <= kMaxTablePhases;
  std::vector<double> table;
  if (tabulate) {
    table.resize(up * width);
    for (std::size_t p = 0; p < up; ++p) {
      kernel.Taps(static_cast<double>(p) / static_cast<double>(up), table.data() + p * width);
    }
  }

  AudioBuffer out;
  out.sample_rate = target_rate;
  const std::size_t n_in = audio.samples.size();
  const std::size_t n_out = ResampledLength(n_in, audio.sample_rate, target_rate);
  out.samples.assign(n_out, 0.0);
  const double* x = audio.samples.data();

#pragma omp parallel if (n_out >= 8192)
  {
    std::vector<double> scratch(tabulate ? 0 : width);
#pragma omp for schedule(static)
    for (std::size_t m = 0; m < n_out; ++m) {
      const std::uint64_t pos = static_cast<std::uint64_t>(m) * down;
      const auto n0 = static_cast<std::int64_t>(pos / up);
      const std::uint64_t phase = pos % up;
      const double* taps;
      if (tabulate) {
        taps = table.data() + phase * width;
      } else {
        kernel.Taps(static_cast<double>(phase) / static_cast<double>(up), scratch.data());
        taps = scratch.data();
      }
      const std::int64_t first = n0 - static_cast<std::int64_t>(kernel.half - 1);
      double acc = 0.0;
      for (std::size_t j = 0; j < width; ++j) {
        const std::int64_t idx = first + static_cast<std::int64_t>(j);
        if (idx >= 0 && idx < static_cast<std::int64_t>(n_in)) acc += taps[j] * x[idx];
      }
      out.samples[m] = acc;
    }
  }
  return out;
}

}  // namespace vcseq::dsp
