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
#include <functional>
#include <string>
#include <vector>

#include "vcseq/autodiff/adam.hpp"
#include "vcseq/config.hpp"
#include "vcseq/dsp/mel.hpp"
#include "vcseq/model/seq2seq.hpp"
#include "vcseq/pipeline/checkpoint.hpp"
#include "vcseq/pipeline/corpus.hpp"

namespace vcseq::pipeline {

/// Normalized training material, indexed like PairedDataset::pairs.
struct TrainingData {
  std::vector<dsp::MelSpectrogram> source;
  std::vector<dsp::MelSpectrogram> target;
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  dsp::MelStats stats;
};

TrainingData MakeTrainingData(const PairedDataset& pairs, const dsp::MelStats& stats);

/// Training-set indices of the batch taken at `step`. Each epoch visits the
/// training set in a fresh permutation keyed by (seed, epoch), so the batch
/// sequence depends only on the seed and the step counter.
std::vector<std::size_t> BatchIndices(std::uint64_t seed, std::uint64_t step,
                                      const std::vector<std::size_t>& train,
                                      std::size_t batch_size);

double LearningRate(const TrainConfig& cfg, Phase phase);

class Trainer {
 public:
  /// Fresh weights from the config seed.
  static Trainer Fresh(const Config& cfg, Phase phase, TrainingData data);
  /// Continues a run exactly where the checkpoint left it.
  static Trainer Resume(const Checkpoint& ckpt, const Config& cfg, TrainingData data);
  /// Starts a new adaptation run from pretrained weights: optimizer state and
  /// step counter are reset, normalization statistics are kept.
  static Trainer Adapt(const Checkpoint& pretrained, const Config& cfg, TrainingData data);

  /// One optimizer update on the next batch; returns its training L1.
  double Step();
  /// Teacher-forced L1 over the validation split in inference mode; NaN when
  /// the split is empty.
  double Validate() const;
  /// Mean teacher-forced L1 (inference mode) over the given pair indices.
  double Evaluate(const std::vector<std::size_t>& indices) const;

  Checkpoint Snapshot() const;

  std::uint64_t step() const { return step_; }
  Phase phase() const { return phase_; }
  const Config& config() const { return config_; }
  const TrainingData& data() const { return data_; }
  const model::Seq2Seq<float>& model() const { return model_; }
  model::Seq2Seq<float>& model() { return model_; }
  double best_loss() const { return best_loss_; }
  void set_best_loss(double v) { best_loss_ = v; }

 private:
  Trainer(const Config& cfg, Phase phase, TrainingData data, model::Seq2Seq<float> model);

  Config config_;
  Phase phase_;
  TrainingData data_;
  model::Seq2Seq<float> model_;
  ad::ParameterList<float> params_;
  ad::AdamState<float> adam_;
  std::uint64_t step_ = 0;
  double best_loss_;
};

struct ProgressRow {
  std::uint64_t step = 0;
  double train_l1 = 0.0;  // mean over the steps since the previous row
  double val_l1 = 0.0;    // NaN without a validation split
  std::int64_t wall_ms = 0;
};

/// "step,train_l1,val_l1,wall_ms" and one formatted row.
std::string ProgressHeader();
std::string FormatProgress(const ProgressRow& row);

struct LoopOptions {
  std::string out_dir;      // empty: keep checkpoints in memory only
  bool wall_clock = true;   // false: report wall_ms as 0 for byte-stable logs
  std::function<void(const ProgressRow&)> on_progress;
};

struct LoopResult {
  std::vector<ProgressRow> rows;
  Checkpoint last;
  std::string last_path;
};

/// Steps until config.train.max_steps. Every log_every steps a progress row
/// is produced; every save_every steps (and at the end) `step-NNNNNNN.vcckpt`
/// and `latest.vcckpt` are written, plus `best.vcckpt` when the validation
/// loss (training loss without a validation split) improves. A non-finite
/// loss aborts with NonFiniteError; files already written are untouched.
LoopResult RunTraining(Trainer& trainer, const LoopOptions& opts);

}  // namespace vcseq::pipeline
