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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "vcseq/common/rng.hpp"
#include "vcseq/config.hpp"
#include "vcseq/dsp/griffin_lim.hpp"
#include "vcseq/dsp/resample.hpp"
#include "vcseq/dsp/stft.hpp"
#include "vcseq/kernels/gemm.hpp"
#include "vcseq/model/gradcheck_suite.hpp"
#include "vcseq/model/seq2seq.hpp"
#include "vcseq/pipeline/batch.hpp"
#include "vcseq/pipeline/checkpoint.hpp"
#include "vcseq/pipeline/convert.hpp"
#include "vcseq/pipeline/corpus.hpp"
#include "vcseq/pipeline/synthetic.hpp"
#include "vcseq/pipeline/train.hpp"

namespace fs = std::filesystem;
using namespace vcseq;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

template <typename T>
ad::Tensor<T> RandomTensor(std::size_t rows, std::size_t cols, CounterRng& rng, double lo, double hi) {
  std::vector<T> v(rows * cols);
  for (auto& x : v) x = static_cast<T>(rng.Uniform(lo, hi));
  return ad::Tensor<T>::FromData({rows, cols}, std::move(v));
}

template <typename T>
std::size_t Argmax(const ad::Tensor<T>& row) {
  const auto d = row.data();
  return static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
}

const nn::Context kInfer{ad::Mode::kInfer, nullptr};

// ---------------------------------------------------------------------------

Outcome GradientChecks() {
  const auto t0 = Clock::now();
  std::string worst;
  double worst_ratio = 0.0;
  bool ok = true;
  std::size_t entries = 0;
  for (auto scale : {model::CheckScale::kTiny, model::CheckScale::kSmall}) {
    model::CheckSuiteOptions opts;
    opts.scale = scale;
    for (const auto& c : model::RunGradientChecks(opts)) {
      ok = ok && c.passed;
      entries += c.entries;
      const double ratio = c.max_rel_error / c.tolerance;
      if (ratio >= worst_ratio) {
        worst_ratio = ratio;
        worst = fmt::format("{} {} {:.2e} (tol {:.0e})",
                            scale == model::CheckScale::kTiny ? "tiny" : "small", c.component,
                            c.max_rel_error, c.tolerance);
      }
    }
  }
  const double secs = Seconds(t0);
  ok = ok && secs < 120.0;
  return {ok, fmt::format("{} entries at hidden 8 and 16, worst {}, {:.1f} s", entries, worst, secs)};
}

Outcome EncoderLengths() {
  const Config cfg;
  CounterRng rng(2);
  auto enc = model::Encoder<float>::Create(cfg.model, cfg.audio.n_mels, rng);
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  std::size_t width = 0;
  for (std::size_t t = 1; t <= 17; ++t) {
    const auto mel = RandomTensor<float>(t, cfg.audio.n_mels, rng, 0.0, 1.0);
    const auto mem = enc.Encode(mel, 0.0f, kInfer);
    width = mem.h.cols();
    if (mem.length() != (t + 3) / 4 || mem.h.cols() != 300) ++bad;
  }
  const double secs = Seconds(t0);
  return {bad == 0 && secs < 1.0,
          fmt::format("T=1..17 give ceil(T/4) x {} ({} mismatches), {:.3f} s", width, bad, secs)};
}

Outcome AttentionDistribution() {
  const Config cfg;
  CounterRng rng(3);
  auto dec = model::Decoder<float>::Create(cfg.model, cfg.audio.n_mels, 2 * cfg.model.enc_hidden, rng);
  const std::size_t width = 2 * cfg.model.enc_hidden;
  double worst_sum = 0.0;
  float min_weight = 1.0f;
  std::size_t steps = 0;
  ad::NoGradScope no_grad;
  for (std::size_t seq = 0; steps < 1000; ++seq) {
    dec.attention.form = seq % 2 == 0 ? AttentionForm::kMultiplicative : AttentionForm::kAdditive;
    const std::size_t len = 1 + rng.NextU64() % 40;
    const auto memory = RandomTensor<float>(len, width, rng, -1.0, 1.0);
    const auto keys = dec.attention.Keys(memory);
    auto state = dec.InitialState(len);
    for (std::size_t i = 0; i < 25 && steps < 1000; ++i, ++steps) {
      ad::Tensor<float> alpha;
      dec.Step(state, memory, keys, kInfer, &alpha);
      double sum = 0.0;
      for (float a : alpha.data()) {
        sum += a;
        min_weight = std::min(min_weight, a);
      }
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }
  dec.attention.form = AttentionForm::kMultiplicative;

  std::size_t invariant = 0;
  const std::size_t cases = 100;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t len = 2 + rng.NextU64() % 39;
    const auto memory = RandomTensor<float>(len, width, rng, -1.0, 1.0);
    const auto s_prev = RandomTensor<float>(1, cfg.model.dec_hidden, rng, -1.0, 1.0);
    auto alpha_prev = RandomTensor<float>(1, len, rng, 0.0, 1.0);
    float total = 0.0f;
    for (float a : alpha_prev.data()) total += a;
    for (float& a : alpha_prev.mutable_data()) a /= total;
    auto att = dec.attention;
    const auto e = att.Energies(s_prev, att.Keys(memory), att.LocationFeatures(alpha_prev));
    const std::size_t base = Argmax(e);
    att.beta = static_cast<float>(rng.Uniform(0.1, 10.0));
    const bool beta_ok = Argmax(att.Weights(e)) == base;
    att.beta = 1.0f;
    const auto scaled = ad::Scale(e, static_cast<float>(rng.Uniform(0.1, 10.0)));
    const bool scale_ok = Argmax(att.Weights(scaled)) == base;
    if (beta_ok && scale_ok) ++invariant;
  }
  const bool ok = worst_sum <= 1e-6 && min_weight >= 0.0f && invariant == cases;
  return {ok, fmt::format("{} steps: max |sum-1| {:.2e}, min weight {:.2e}; argmax invariant on {}/{}",
                          steps, worst_sum, static_cast<double>(min_weight), invariant, cases)};
}

Outcome ResidualIdentity() {
  const Config cfg;
  CounterRng rng(4);
  auto dec = model::Decoder<float>::Create(cfg.model, cfg.audio.n_mels, 2 * cfg.model.enc_hidden, rng);
  const std::size_t h = cfg.model.dec_hidden;
  std::size_t exact_steps = 0;
  std::size_t literal_mismatch = 0;
  ad::NoGradScope no_grad;
  for (std::size_t i = 0; i < 100; ++i) {
    model::DecoderState<float> state = dec.InitialState(1);
    state.dec1_h = RandomTensor<float>(1, h, rng, -1.0, 1.0);
    state.dec2_h = RandomTensor<float>(1, h, rng, -1.0, 1.0);
    const auto s = RandomTensor<float>(1, h, rng, -1.0, 1.0);
    const auto out = dec.ResidualStep(s, state);
    bool exact = true;
    for (std::size_t j = 0; j < h; ++j) {
      const float r1 = out.rnn1_out.at(0, j), g1 = out.g1.at(0, j);
      const float r2 = out.rnn2_out.at(0, j), g2 = out.g2.at(0, j);
      exact = exact && g1 == r1 + s.at(0, j) && g2 == r2 + g1;
      if (g1 - r1 != s.at(0, j) || g2 - r2 != g1) ++literal_mismatch;
    }
    if (exact) ++exact_steps;
  }
  return {exact_steps == 100,
          fmt::format("g1 == rnn1_out + s and g2 == rnn2_out + g1 bitwise on {}/100 steps "
                      "(float re-subtraction differs by rounding on {} of {} entries)",
                      exact_steps, literal_mismatch, 100 * h)};
}

// ---------------------------------------------------------------------------
// Overfit, adaptation and reproducibility share one corpus and one run.

struct Workspace {
  fs::path dir;
  std::vector<pipeline::Utterance> source;
  std::vector<pipeline::Utterance> shifted;
};

pipeline::SyntheticCorpus ToneCorpus(double pitch) {
  pipeline::SyntheticCorpus c;
  c.count = 4;
  c.seed = 7;
  c.style = pipeline::SyntheticStyle::kModulatedTones;
  c.pitch_factor = pitch;
  return c;
}

constexpr double kShiftedPitch = 1.2;

Workspace MakeWorkspace(const fs::path& dir) {
  Workspace ws;
  ws.dir = dir;
  const Config cfg;
  for (auto [name, pitch] : {std::pair{"source", 1.0}, std::pair{"shifted", kShiftedPitch}}) {
    const auto root = (dir / name).string();
    const auto manifest = pipeline::WriteSyntheticCorpus(root, ToneCorpus(pitch));
    auto utts = pipeline::ScanCorpus(root, manifest, root + "/cache", cfg.audio);
    (std::string(name) == "source" ? ws.source : ws.shifted) = std::move(utts);
  }
  return ws;
}

Config OverfitConfig() {
  Config cfg;
  cfg.model.enc_hidden = 64;
  cfg.model.dec_hidden = 64;
  cfg.model.attn_dim = 64;
  cfg.train.batch_size = 4;
  cfg.train.max_steps = 2000;
  cfg.train.lr_pretrain = 1e-4;
  cfg.train.save_every = 0;
  return cfg;
}

struct OverfitRun {
  double initial_l1 = 0.0;
  double final_l1 = 0.0;
  double free_run_l1 = 0.0;
  double seconds = 0.0;
  pipeline::Checkpoint final_ckpt;
  std::vector<std::uint8_t> final_bytes;
  std::vector<std::uint8_t> step101_bytes;
  std::string step100_path;
};

pipeline::TrainingData OverfitData(const Workspace& ws) {
  const auto pairs = pipeline::MakePairs(ws.source, ws.source, {4, 0, 0}, 1);
  return pipeline::MakeTrainingData(pairs, pipeline::CorpusStats(pairs));
}

// Mean |decoded - target| over the target's frames, decoding exactly that
// many steps with no early stop.
double FreeRunningL1(const pipeline::Checkpoint& ckpt, const pipeline::TrainingData& data,
                     std::size_t index) {
  const pipeline::Converter conv(ckpt);
  const auto& target = data.target[index];
  pipeline::ConvertOptions opts;
  opts.max_steps = target.n_frames();
  opts.stop_on_silence = false;
  const auto out = conv.DecodeMel(data.source[index], opts);
  double sum = 0.0;
  for (std::size_t t = 0; t < target.n_frames(); ++t) {
    for (std::size_t b = 0; b < target.n_mels(); ++b) {
      const float pred = t < out.mel.n_frames() ? out.mel.frames(t, b) : 0.0f;
      sum += std::abs(static_cast<double>(pred) - target.frames(t, b));
    }
  }
  return sum / static_cast<double>(target.frames.data.size());
}

OverfitRun TrainOverfit(const Workspace& ws, const std::string& tag) {
  OverfitRun run;
  const auto t0 = Clock::now();
  auto tr = pipeline::Trainer::Fresh(OverfitConfig(), pipeline::Phase::kPretrain, OverfitData(ws));
  run.initial_l1 = tr.Evaluate(tr.data().train);
  while (tr.step() < tr.config().train.max_steps) {
    tr.Step();
    if (tr.step() == 100) {
      run.step100_path = (ws.dir / (tag + "-step100.vcckpt")).string();
      pipeline::SaveCheckpoint(tr.Snapshot(), run.step100_path);
    }
    if (tr.step() == 101) run.step101_bytes = pipeline::EncodeCheckpoint(tr.Snapshot());
    if (tr.step() % 500 == 0) {
      std::fprintf(stderr, "  [%s] step %llu, %.0f s\n", tag.c_str(),
                   static_cast<unsigned long long>(tr.step()), Seconds(t0));
    }
  }
  run.final_l1 = tr.Evaluate(tr.data().train);
  run.final_ckpt = tr.Snapshot();
  run.final_bytes = pipeline::EncodeCheckpoint(run.final_ckpt);
  run.free_run_l1 = FreeRunningL1(run.final_ckpt, tr.data(), 0);
  run.seconds = Seconds(t0);
  return run;
}

Outcome Overfit(const OverfitRun& run) {
  const double ratio = run.final_l1 / run.initial_l1;
  const bool ok = ratio <= 0.10 && run.free_run_l1 <= 0.08 && run.seconds < 15 * 60;
  return {ok, fmt::format("teacher-forced L1 {:.4f} -> {:.4f} ({:.3f} of initial), free-running L1 {:.4f}, "
                          "{:.0f} s",
                          run.initial_l1, run.final_l1, ratio, run.free_run_l1, run.seconds)};
}

Outcome Adapt(const Workspace& ws, const OverfitRun& run) {
  const auto t0 = Clock::now();
  const auto& ckpt = run.final_ckpt;
  const auto pairs = pipeline::MakePairs(ws.source, ws.shifted, {4, 0, 0}, 1);
  Config cfg = ckpt.config;
  cfg.train.max_steps = 500;
  cfg.train.lr_adapt = 0.5e-5;
  auto tr = pipeline::Trainer::Adapt(ckpt, cfg, pipeline::MakeTrainingData(pairs, ckpt.stats));
  std::vector<double> curve = {tr.Evaluate(tr.data().train)};
  while (tr.step() < cfg.train.max_steps) {
    tr.Step();
    if (tr.step() % 25 == 0) curve.push_back(tr.Evaluate(tr.data().train));
  }
  const bool names_same = tr.Snapshot().TensorNames() == ckpt.TensorNames();
  std::size_t rises = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (!(curve[i] < curve[i - 1])) ++rises;
  }
  const double reduction = 1.0 - curve.back() / curve.front();
  const double secs = Seconds(t0);
  const bool ok = rises == 0 && reduction >= 0.30 && names_same && secs < 10 * 60;
  return {ok, fmt::format("pitch x{} targets, train L1 {:.4f} -> {:.4f} ({:.1f}% lower, {} non-decreasing "
                          "of {} intervals), names {}, {:.0f} s",
                          kShiftedPitch, curve.front(), curve.back(), 100.0 * reduction, rises,
                          curve.size() - 1, names_same ? "unchanged" : "CHANGED", secs)};
}

Outcome Reproducible(const Workspace& ws, const OverfitRun& first) {
  const auto second = TrainOverfit(ws, "second");
  const bool same_run = first.final_bytes == second.final_bytes;

  auto tr = pipeline::Trainer::Resume(pipeline::LoadCheckpoint(first.step100_path), OverfitConfig(),
                                      OverfitData(ws));
  tr.Step();
  const bool same_resume = tr.step() == 101 && pipeline::EncodeCheckpoint(tr.Snapshot()) == first.step101_bytes;
  return {same_run && same_resume,
          fmt::format("repeat run checkpoint {} ({} bytes); resume at 100 + 1 step {} uninterrupted step 101",
                      same_run ? "bit-identical" : "DIFFERS", first.final_bytes.size(),
                      same_resume ? "equals" : "DIFFERS from")};
}

// ---------------------------------------------------------------------------

Outcome GriffinLimChecks() {
  const dsp::FrameParams p;
  std::size_t increases = 0;
  std::size_t transitions = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(700 + seed);
    dsp::LinearSpectrogram target;
    target.params = p;
    target.magnitudes = dsp::Matrix<double>(40, p.bins());
    for (auto& v : target.magnitudes.data) v = rng.Uniform(0.0, 3.0);
    dsp::GriffinLimOptions opts;
    opts.seed = seed;
    const auto r = dsp::GriffinLim(target, 60, 22050, opts);
    for (std::size_t k = 1; k < r.distances.size(); ++k, ++transitions) {
      if (r.distances[k] > r.distances[k - 1] + 1e-6) ++increases;
    }
  }
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto audio = pipeline::SynthesizeUtterance({seed});
    const auto target = dsp::Stft(audio, p);
    dsp::GriffinLimOptions opts;
    opts.n_samples = audio.size();
    const auto r = dsp::GriffinLim(target, 60, audio.sample_rate, opts);
    worst = std::max(worst, r.distances.back() / dsp::SpectralNorm(target.magnitudes));
  }
  return {increases == 0 && worst < 0.05,
          fmt::format("{} increases over {} iterations on 10 random targets; self-consistency error "
                      "{:.2f}% (worst of 5 utterances)",
                      increases, transitions, 100.0 * worst)};
}

Outcome PaddingInvariance() {
  ModelConfig mc;
  mc.enc_hidden = 6;
  mc.dec_hidden = 12;
  mc.attn_dim = 6;
  mc.dec_prenet = {12, 8};
  mc.loc_kernels = 2;
  mc.loc_width = 3;
  mc.highway_layers = 1;
  const std::size_t n_mels = 10;
  const auto net = model::Seq2Seq<float>::Create(mc, n_mels, 9);
  CounterRng rng(9);
  const auto random_mel = [&](std::size_t frames) {
    dsp::MelSpectrogram m;
    m.frames = dsp::Matrix<float>(frames, n_mels);
    for (auto& v : m.frames.data) v = static_cast<float>(rng.Uniform());
    return m;
  };
  const auto loss_of = [&](const pipeline::Batch<float>& batch) {
    std::vector<ad::Tensor<float>> preds;
    for (std::size_t b = 0; b < batch.size(); ++b) {
      const auto memory = net.encoder.Encode(batch.Source(b), 0.0f, kInfer);
      preds.push_back(pipeline::PadRows(net.decoder.DecodeTeacherForced(memory, batch.Target(b), kInfer).frames,
                                        batch.max_target));
    }
    return pipeline::L1Loss(ad::Concat(preds, 0), batch.StackedTarget(), batch.StackedMask()).item();
  };
  ad::NoGradScope no_grad;
  std::size_t unchanged = 0;
  std::size_t perturbed_rows = 0;
  for (std::size_t trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.NextU64() % 3;
    std::vector<dsp::MelSpectrogram> src, tgt;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      src.push_back(random_mel(3 + rng.NextU64() % 18));
      tgt.push_back(random_mel(2 + rng.NextU64() % 14));
      idx.push_back(i);
    }
    tgt[0] = random_mel(16);  // forces padding on every shorter target
    auto batch = pipeline::MakeBatch(src, tgt, idx, 0.0f);
    const float before = loss_of(batch);
    for (std::size_t r = 0; r < batch.mask.size(); ++r) {
      if (batch.mask[r] != 0.0f) continue;
      ++perturbed_rows;
      for (std::size_t c = 0; c < n_mels; ++c) {
        batch.target[r * n_mels + c] = static_cast<float>(rng.Uniform(-100.0, 100.0));
      }
    }
    if (loss_of(batch) == before) ++unchanged;
  }
  return {unchanged == 50 && perturbed_rows > 0,
          fmt::format("loss bit-identical on {}/50 batches after rewriting {} padded target rows", unchanged,
                      perturbed_rows)};
}

Outcome SplitAndResample() {
  std::string manifest;
  for (std::size_t i = 0; i < 1132; ++i) manifest += fmt::format("spk{:04}|wav/spk{:04}.wav\n", i, i);
  std::vector<pipeline::Utterance> utts;
  for (const auto& e : pipeline::ParseManifest(manifest)) utts.push_back({e.id, e.path, "", 10});
  TrainConfig tc;
  tc.split = {1000, 66, 66};
  const auto data = pipeline::MakePairs(utts, utts, pipeline::SplitFromConfig(tc, utts.size()), 1);
  std::set<std::size_t> all(data.train.begin(), data.train.end());
  all.insert(data.val.begin(), data.val.end());
  all.insert(data.test.begin(), data.test.end());
  const bool split_ok = data.train.size() == 1000 && data.val.size() == 66 && data.test.size() == 66 &&
                        all.size() == 1132;

  std::size_t length_mismatch = 0;
  for (std::size_t n = 0; n <= 200000; ++n) {
    // Round half up in integers: floor((2 n 22050 + 16000) / 32000).
    const std::size_t want = (2 * n * 22050 + 16000) / 32000;
    if (dsp::ResampledLength(n, 16000, 22050) != want) ++length_mismatch;
  }
  std::size_t audio_mismatch = 0;
  for (std::size_t n : {1u, 320u, 12345u, 16000u, 48001u}) {
    dsp::AudioBuffer a;
    a.sample_rate = 16000;
    a.samples.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) a.samples[i] = std::sin(0.01 * static_cast<double>(i));
    const auto out = dsp::Resample(a, 22050);
    if (out.size() != (2 * n * 22050 + 16000) / 32000 || out.sample_rate != 22050) ++audio_mismatch;
  }
  return {split_ok && length_mismatch == 0 && audio_mismatch == 0,
          fmt::format("split {}/{}/{} covering {} ids; resampled length mismatches {} of 200001 lengths, "
                      "{} of 5 signals",
                      data.train.size(), data.val.size(), data.test.size(), all.size(), length_mismatch,
                      audio_mismatch)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vcseq acceptance run"};
  std::vector<int> only;
  std::string work_dir;
  app.add_option("--only", only, "Run just these criteria")->delimiter(',')->check(CLI::Range(1, 10));
  app.add_option("--work-dir", work_dir, "Scratch directory (default: a fresh temp dir, removed afterwards)");
  CLI11_PARSE(app, argc, argv);

  kernels::SetThreads(1);
  const std::set<int> selected = only.empty() ? std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}
                                              : std::set<int>(only.begin(), only.end());
  const bool own_dir = work_dir.empty();
  const fs::path dir = own_dir ? fs::temp_directory_path() / fmt::format("vcseq_acceptance_{}", ::getpid())
                               : fs::path(work_dir);
  fs::create_directories(dir);

  std::map<int, Outcome> results;
  const auto run = [&](int id, const std::function<Outcome()>& fn) {
    if (selected.count(id) == 0) return;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    results[id] = o;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
    std::fflush(stdout);
  };

  run(1, GradientChecks);
  run(2, EncoderLengths);
  run(3, AttentionDistribution);
  run(4, ResidualIdentity);

  std::optional<Workspace> ws;
  std::optional<OverfitRun> overfit;
  if (selected.count(5) || selected.count(6) || selected.count(8)) {
    try {
      ws = MakeWorkspace(dir);
      overfit = TrainOverfit(*ws, "first");
    } catch (const std::exception& e) {
      for (int id : {5, 6, 8}) run(id, [&] { return Outcome{false, fmt::format("overfit run threw: {}", e.what())}; });
    }
  }
  if (overfit) {
    run(5, [&] { return Overfit(*overfit); });
    run(6, [&] { return Adapt(*ws, *overfit); });
  }
  run(7, GriffinLimChecks);
  if (overfit) run(8, [&] { return Reproducible(*ws, *overfit); });
  run(9, PaddingInvariance);
  run(10, SplitAndResample);

  if (own_dir) fs::remove_all(dir);
  std::size_t failed = 0;
  for (const auto& [id, o] : results) failed += o.pass ? 0 : 1;
  std::printf("%zu of %zu criteria passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}
