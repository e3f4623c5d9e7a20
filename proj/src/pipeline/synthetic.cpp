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

#include "vcseq/pipeline/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "vcseq/common/error.hpp"
#include "vcseq/common/rng.hpp"

namespace vcseq::pipeline {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFadeSeconds = 0.05;
constexpr double kMaxHarmonicHz = 7000.0;

// One-pole low-pass coefficient for cutoff `hz`.
double Smoothing(double hz, double rate) { return 1.0 - std::exp(-kTwoPi * hz / rate); }

void ApplyFades(std::vector<double>& x, double rate) {
  const std::size_t n = x.size();
  const auto fade = std::min(n / 2, static_cast<std::size_t>(kFadeSeconds * rate));
  for (std::size_t i = 0; i < fade; ++i) {
    const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(fade));
    x[i] *= g;
    x[n - 1 - i] *= g;
  }
}

std::vector<double> SpeechLike(CounterRng& rng, std::size_t n, double pitch_factor,
                               std::uint32_t sample_rate) {
  const double rate = sample_rate;

  // Syllables: pitch targets joined by short glides; the last syllable is
  // held to the end.
  const std::size_t syllables = 3 + rng.Below(3);
  std::vector<double> f0(syllables);
  for (auto& f : f0) f = rng.Uniform(110.0, 240.0);
  std::vector<double> brightness(syllables);
  for (auto& b : brightness) b = rng.Uniform(0.6, 1.4);

  // Envelope and breath noise are drawn from their own streams so the pitch
  // factor never changes them.
  CounterRng env_rng = rng.Split("envelope");
  CounterRng breath_rng = rng.Split("breath");
  const double env_alpha = Smoothing(6.0, rate);
  const double breath_alpha = Smoothing(3000.0, rate);

  std::vector<double> out(n);
  std::vector<double> phase(32, 0.0);
  double env = 0.6, env_target = 0.6, breath = 0.0;
  const std::size_t env_hold = sample_rate / 25;
  for (std::size_t i = 0; i < n; ++i) {
    const double pos = static_cast<double>(i) * static_cast<double>(syllables) / static_cast<double>(n);
    const auto k = std::min(static_cast<std::size_t>(pos), syllables - 1);
    const double frac = pos - static_cast<double>(k);
    double f = f0[k];
    double bright = brightness[k];
    if (k + 1 < syllables && frac > 0.8) {
      const double g = (frac - 0.8) / 0.2;
      f += (f0[k + 1] - f0[k]) * g;
      bright += (brightness[k + 1] - brightness[k]) * g;
    }
    f *= pitch_factor;

    if (i % env_hold == 0) env_target = env_rng.Uniform(0.25, 1.0);
    env += env_alpha * (env_target - env);
    breath += breath_alpha * (breath_rng.Normal() - breath);

    double v = 0.0;
    for (std::size_t h = 1; h < phase.size(); ++h) {
      const double fh = f * static_cast<double>(h);
      if (fh >= kMaxHarmonicHz || fh >= rate / 2.0) break;
      phase[h] = std::fmod(phase[h] + kTwoPi * fh / rate, kTwoPi);
      v += std::sin(phase[h]) * std::pow(static_cast<double>(h), -bright);
    }
    out[i] = env * (0.25 * v + 0.02 * breath);
  }
  return out;
}

std::vector<double> ModulatedTones(CounterRng& rng, std::size_t n, double pitch_factor,
                                   std::uint32_t sample_rate) {
  const double rate = sample_rate;
  const std::size_t tones = 2 + rng.Below(2);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < tones; ++k) {
    CounterRng tone_rng = rng.Split("tone").Split(k);
    const double f = pitch_factor * tone_rng.Uniform(200.0, 2500.0);
    if (f >= rate / 2.0) continue;
    const double start = tone_rng.Uniform(0.0, kTwoPi);
    const double alpha = Smoothing(tone_rng.Uniform(3.0, 8.0), rate);
    // Two cascaded one-pole stages; the state starts at the stationary mean.
    double a = 0.0, b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      a += alpha * (tone_rng.Normal() - a);
      b += alpha * (a - b);
      const double gain = std::clamp(0.6 + 12.0 * b, 0.1, 1.0);
      out[i] += gain * std::sin(start + kTwoPi * f * static_cast<double>(i) / rate);
    }
  }
  for (auto& v : out) v *= 0.8 / static_cast<double>(tones);
  return out;
}

}  // namespace

std::string SyntheticId(std::size_t index) { return fmt::format("utt{:04d}", index); }

dsp::AudioBuffer SynthesizeUtterance(const SyntheticScript& script, double pitch_factor,
                                     std::uint32_t sample_rate) {
  if (!(pitch_factor > 0.0)) throw ArgumentError("pitch factor must be positive");
  if (!(script.min_seconds > 0.0) || script.max_seconds < script.min_seconds) {
    throw ArgumentError("synthetic duration range must be positive and ordered");
  }
  CounterRng rng = CounterRng(script.seed).Split("synthetic-script");
  const double seconds = rng.Uniform(script.min_seconds, script.max_seconds);
  const auto n = static_cast<std::size_t>(std::llround(seconds * sample_rate));
  dsp::AudioBuffer out;
  out.sample_rate = sample_rate;
  out.samples = script.style == SyntheticStyle::kModulatedTones
                    ? ModulatedTones(rng, n, pitch_factor, sample_rate)
                    : SpeechLike(rng, n, pitch_factor, sample_rate);
  ApplyFades(out.samples, sample_rate);
  return out;
}

std::string WriteSyntheticCorpus(const std::string& dir, const SyntheticCorpus& corpus) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "wav");
  const CounterRng root(corpus.seed);
  std::string manifest = "# synthetic corpus\n";
  for (std::size_t i = 0; i < corpus.count; ++i) {
    const std::string id = SyntheticId(i);
    SyntheticScript script;
    script.seed = root.Split(i).key();
    script.min_seconds = corpus.min_seconds;
    script.max_seconds = corpus.max_seconds;
    script.style = corpus.style;
    const std::string rel = "wav/" + id + ".wav";
    dsp::SaveWav(SynthesizeUtterance(script, corpus.pitch_factor, corpus.sample_rate),
                 (fs::path(dir) / rel).string());
    manifest += id + "|" + rel + "\n";
  }
  const std::string path = (fs::path(dir) / "manifest.txt").string();
  std::ofstream(path, std::ios::binary) << manifest;
  return path;
}

}  // namespace vcseq::pipeline
