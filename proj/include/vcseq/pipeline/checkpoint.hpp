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
#include <limits>
#include <string>
#include <vector>

#include "vcseq/autodiff/adam.hpp"
#include "vcseq/config.hpp"
#include "vcseq/dsp/mel.hpp"
#include "vcseq/model/seq2seq.hpp"

namespace vcseq::pipeline {

enum class Phase { kPretrain, kAdapt };

std::string ToString(Phase phase);
Phase PhaseFromString(const std::string& s);

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct StoredTensor {
  std::string name;
  std::vector<std::size_t> shape;
  bool trainable = true;
  std::vector<float> data;

  bool operator==(const StoredTensor&) const = default;
};

struct StoredOptimizer {
  std::int64_t t = 0;
  std::vector<std::vector<float>> m;  // one per trainable tensor, in order
  std::vector<std::vector<float>> v;

  bool operator==(const StoredOptimizer&) const = default;
};

/// Everything needed to resume training or run conversion.
struct Checkpoint {
  std::uint32_t version = kCheckpointVersion;
  Config config;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
  Phase phase = Phase::kPretrain;
  dsp::MelStats stats;
  std::vector<StoredTensor> tensors;
  bool has_optimizer = false;
  StoredOptimizer optimizer;
  double best_loss = std::numeric_limits<double>::infinity();

  bool operator==(const Checkpoint& o) const;
  std::vector<std::string> TensorNames() const;
};

// Layout: "VCSQ", u32 version, u32 header length, JSON header, float32
// blobs, u32 CRC-32 of every preceding byte. All little-endian.
std::vector<std::uint8_t> EncodeCheckpoint(const Checkpoint& ckpt);
Checkpoint DecodeCheckpoint(const std::vector<std::uint8_t>& bytes);
void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

/// Copies model tensors (and optionally Adam moments) into a checkpoint.
void StoreModel(const model::Seq2Seq<float>& model, const ad::AdamState<float>* adam,
                Checkpoint& ckpt);

/// Builds a model from the checkpoint's config and copies its tensors in.
/// Names and shapes must match exactly.
model::Seq2Seq<float> RestoreModel(const Checkpoint& ckpt);
ad::AdamState<float> RestoreOptimizer(const Checkpoint& ckpt, const model::Seq2Seq<float>& model);

}  // namespace vcseq::pipeline
