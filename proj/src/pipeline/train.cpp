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

#include "vcseq/pipeline/train.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "vcseq/autodiff/ops.hpp"
#include "vcseq/common/error.hpp"
#include "vcseq/common/rng.hpp"
#include "vcseq/pipeline/batch.hpp"

namespace vcseq::pipeline {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ad::Tensor<float> ToTensor(const dsp::MelSpectrogram& mel) {
  return ad::Tensor<float>::FromData({mel.n_frames(), mel.n_mels()}, mel.frames.data);
}

void ClipGradients(ad::ParameterList<float>& params, double max_norm) {
  double sq = 0.0;
  for (auto& p : params) {
    if (!p.trainable || !p.tensor.has_grad()) continue;
    for (float g : p.tensor.grad()) sq += static_cast<double>(g) * g;
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm) return;
  const auto scale = static_cast<float>(max_norm / norm);
  for (auto& p : params) {
    if (!p.trainable || !p.tensor.has_grad()) continue;
    for (float& g : p.tensor.mutable_grad()) g *= scale;
  }
}

void CheckCompatible(const Config& stored, const Config& requested) {
  const auto diff = ArchitectureDiff(stored, requested);
  if (diff.empty()) return;
  std::string msg = "config does not match the checkpoint architecture:";
  for (const auto& d : diff) msg += "\n  " + d;
  throw ValidationError(msg);
}

}  // namespace

TrainingData MakeTrainingData(const PairedDataset& pairs, const dsp::MelStats& stats) {
  MelPairs mels = LoadNormalizedPairs(pairs, stats);
  TrainingData data;
  data.source = std::move(mels.source);
  data.target = std::move(mels.target);
  data.train = pairs.train;
  data.val = pairs.val;
  data.stats = stats;
  return data;
}

std::vector<std::size_t> BatchIndices(std::uint64_t seed, std::uint64_t step,
                                      const std::vector<std::size_t>& train,
                                      std::size_t batch_size) {
  if (train.empty()) throw ArgumentError("training split is empty");
  if (batch_size == 0) throw ArgumentError("batch size must be positive");
  const std::uint64_t n = train.size();
  const CounterRng epochs = CounterRng(seed).Split("epoch");
  std::vector<std::size_t> perm;
  std::uint64_t perm_epoch = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < batch_size; ++j) {
    const std::uint64_t pos = step * batch_size + j;
    const std::uint64_t epoch = pos / n;
    if (epoch != perm_epoch) {
      perm = train;
      CounterRng rng = epochs.Split(epoch);
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.Below(i)]);
      perm_epoch = epoch;
    }
    out.push_back(perm[pos % n]);
  }
  return out;
}

double LearningRate(const TrainConfig& cfg, Phase phase) {
  return phase == Phase::kPretrain ? cfg.lr_pretrain : cfg.lr_adapt;
}

Trainer::Trainer(const Config& cfg, Phase phase, TrainingData data, model::Seq2Seq<float> model)
    : config_(cfg),
      phase_(phase),
      data_(std::move(data)),
      model_(std::move(model)),
      best_loss_(std::numeric_limits<double>::infinity()) {
  params_ = model_.Parameters();
  adam_ = ad::MakeAdamState(params_);
  if (data_.train.empty()) throw ArgumentError("training split is empty");
  for (const auto& m : data_.source) {
    if (m.n_mels() != cfg.audio.n_mels) throw ShapeError("mel width does not match config");
  }
}

Trainer Trainer::Fresh(const Config& cfg, Phase phase, TrainingData data) {
  auto model = model::Seq2Seq<float>::Create(cfg.model, cfg.audio.n_mels, cfg.train.seed);
  return Trainer(cfg, phase, std::move(data), std::move(model));
}

Trainer Trainer::Resume(const Checkpoint& ckpt, const Config& cfg, TrainingData data) {
  CheckCompatible(ckpt.config, cfg);
  Config merged = cfg;
  merged.train.seed = ckpt.seed;  // the trajectory is keyed by the recorded seed
  Trainer t(merged, ckpt.phase, std::move(data), RestoreModel(ckpt));
  t.adam_ = RestoreOptimizer(ckpt, t.model_);
  t.step_ = ckpt.step;
  t.best_loss_ = ckpt.best_loss;
  return t;
}

Trainer Trainer::Adapt(const Checkpoint& pretrained, const Config& cfg, TrainingData data) {
  CheckCompatible(pretrained.config, cfg);
  if (data.stats.min != pretrained.stats.min || data.stats.max != pretrained.stats.max) {
    throw ArgumentError("adaptation data must use the pretraining normalization statistics");
  }
  return Trainer(cfg, Phase::kAdapt, std::move(data), RestoreModel(pretrained));
}

double Trainer::Step() {
  const auto indices =
      BatchIndices(config_.train.seed, step_, data_.train, config_.train.batch_size);
  const auto pad = static_cast<float>(dsp::SilenceValue(data_.stats));
  const Batch<float> batch = MakeBatch(data_.source, data_.target, indices, pad);

  ad::ZeroGrads(params_);
  const CounterRng dropout = CounterRng(config_.train.seed).Split("dropout").Split(step_);
  std::vector<CounterRng> rngs;
  std::vector<nn::Context> ctxs;
  std::vector<ad::Tensor<float>> sources;
  rngs.reserve(batch.size());
  for (std::size_t b = 0; b < batch.size(); ++b) rngs.push_back(dropout.Split(b));
  for (std::size_t b = 0; b < batch.size(); ++b) {
    ctxs.push_back({ad::Mode::kTrain, &rngs[b]});
    sources.push_back(batch.Source(b));
  }
  const auto memories = model_.encoder.EncodeBatch(sources, pad, ctxs);
  std::vector<ad::Tensor<float>> preds;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto& memory = memories[b];
    const auto decoded = model_.decoder.DecodeTeacherForced(memory, batch.Target(b), ctxs[b]);
    preds.push_back(PadRows(decoded.frames, batch.max_target));
  }
  const auto pred = preds.size() == 1 ? preds[0] : ad::Concat(preds, 0);
  const auto loss = L1Loss(pred, batch.StackedTarget(), batch.StackedMask());
  ad::Backward(loss);  // throws NonFiniteError before any parameter changes
  if (config_.train.grad_clip > 0.0) ClipGradients(params_, config_.train.grad_clip);
  ad::AdamStep(params_, adam_,
               {LearningRate(config_.train, phase_), config_.train.beta1, config_.train.beta2, 1e-8});
  ++step_;
  return loss.item();
}

double Trainer::Evaluate(const std::vector<std::size_t>& indices) const {
  if (indices.empty()) return kNaN;
  const auto pad = static_cast<float>(dsp::SilenceValue(data_.stats));
  const auto count = static_cast<std::ptrdiff_t>(indices.size());
  std::vector<double> sums(indices.size(), 0.0);
  std::vector<std::size_t> frames(indices.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const ad::NoGradScope no_grad;
    const std::size_t i = indices[static_cast<std::size_t>(k)];
    const nn::Context ctx{ad::Mode::kInfer, nullptr};
    const auto target = ToTensor(data_.target.at(i));
    const auto memory = model_.encoder.Encode(ToTensor(data_.source.at(i)), pad, ctx);
    const auto decoded = model_.decoder.DecodeTeacherForced(memory, target, ctx);
    double s = 0.0;
    for (std::size_t e = 0; e < target.size(); ++e) {
      s += std::abs(static_cast<double>(decoded.frames[e]) - target[e]);
    }
    sums[static_cast<std::size_t>(k)] = s;
    frames[static_cast<std::size_t>(k)] = target.size();
  }
  double total = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < sums.size(); ++k) {  // fixed order
    total += sums[k];
    n += frames[k];
  }
  return total / static_cast<double>(n);
}

double Trainer::Validate() const { return Evaluate(data_.val); }

Checkpoint Trainer::Snapshot() const {
  Checkpoint ckpt;
  ckpt.config = config_;
  ckpt.seed = config_.train.seed;
  ckpt.step = step_;
  ckpt.phase = phase_;
  ckpt.stats = data_.stats;
  ckpt.best_loss = best_loss_;
  StoreModel(model_, &adam_, ckpt);
  return ckpt;
}

std::string ProgressHeader() { return "step,train_l1,val_l1,wall_ms"; }

std::string FormatProgress(const ProgressRow& row) {
  return fmt::format("{},{:.6f},{},{}", row.step, row.train_l1,
                     std::isnan(row.val_l1) ? std::string("nan") : fmt::format("{:.6f}", row.val_l1),
                     row.wall_ms);
}

LoopResult RunTraining(Trainer& trainer, const LoopOptions& opts) {
  namespace fs = std::filesystem;
  const TrainConfig& tc = trainer.config().train;
  const auto start = std::chrono::steady_clock::now();
  if (!opts.out_dir.empty()) fs::create_directories(opts.out_dir);
  const bool has_val = !trainer.data().val.empty();
  const std::size_t log_every = std::max<std::size_t>(tc.log_every, 1);

  LoopResult result;
  double loss_sum = 0.0;
  std::size_t loss_count = 0;
  double recent_train = kNaN;

  auto save = [&](const Checkpoint& ckpt, const std::string& name) {
    const std::string path = (fs::path(opts.out_dir) / name).string();
    SaveCheckpoint(ckpt, path);
    return path;
  };

  while (trainer.step() < tc.max_steps) {
    double loss;
    try {
      loss = trainer.Step();
    } catch (const NonFiniteError& e) {
      throw NonFiniteError(fmt::format("step {}: {}; last good checkpoint: {}", trainer.step() + 1,
                                       e.what(), result.last_path.empty() ? "none" : result.last_path));
    }
    loss_sum += loss;
    ++loss_count;
    const std::uint64_t s = trainer.step();
    const bool final_step = s == tc.max_steps;
    const bool log_now = s % log_every == 0 || final_step;
    const bool save_now = (tc.save_every > 0 && s % tc.save_every == 0) || final_step;

    double val = kNaN;
    if (log_now) {
      ProgressRow row;
      row.step = s;
      row.train_l1 = loss_sum / static_cast<double>(loss_count);
      row.val_l1 = has_val ? trainer.Validate() : kNaN;
      row.wall_ms = opts.wall_clock
                        ? std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start).count()
                        : 0;
      recent_train = row.train_l1;
      val = row.val_l1;
      loss_sum = 0.0;
      loss_count = 0;
      result.rows.push_back(row);
      if (opts.on_progress) opts.on_progress(row);
    }
    if (save_now) {
      if (has_val && std::isnan(val)) val = trainer.Validate();
      const double metric = has_val ? val : (std::isnan(recent_train) ? loss : recent_train);
      const bool improved = metric < trainer.best_loss();
      if (improved) trainer.set_best_loss(metric);
      result.last = trainer.Snapshot();
      if (!opts.out_dir.empty()) {
        save(result.last, fmt::format("step-{:07d}.vcckpt", s));
        result.last_path = save(result.last, "latest.vcckpt");
        if (improved) save(result.last, "best.vcckpt");
      }
    }
  }
  if (result.last.tensors.empty() || result.last.step != trainer.step()) {
    result.last = trainer.Snapshot();
  }
  return result;
}

}  // namespace vcseq::pipeline
