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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace vcseq {

struct AudioConfig {
  std::size_t n_fft = 1024;
  std::size_t hop = 256;
  std::size_t win = 1024;
  std::size_t n_mels = 80;
  double fmin = 0.0;
  double fmax = 8000.0;
  std::uint32_t sample_rate = 22050;
};

enum class AttentionForm { kMultiplicative, kAdditive };

struct ModelConfig {
  std::size_t enc_hidden = 150;
  std::size_t dec_hidden = 300;
  std::size_t attn_dim = 150;
  AttentionForm attn_form = AttentionForm::kMultiplicative;
  double beta = 1.0;
  std::size_t loc_kernels = 8;
  std::size_t loc_width = 15;
  double prenet_dropout = 0.5;
  std::vector<std::size_t> dec_prenet = {256, 128};
  std::vector<std::size_t> bank_widths = {1, 3, 5};
  std::size_t bank_channels = 4;
  std::size_t highway_layers = 4;
};

struct TrainConfig {
  double lr_pretrain = 1e-4;
  double lr_adapt = 0.5e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  std::size_t batch_size = 8;
  std::size_t max_steps = 100000;
  std::size_t save_every = 1000;
  std::uint64_t seed = 1;
  std::size_t log_every = 10;
  double grad_clip = 0.0;  // global-norm clip; 0 disables
  // Split sizes (train, val, test). Empty: 90/5/5 percent of the pairs.
  std::vector<std::size_t> split;
};

struct InferConfig {
  double max_steps_factor = 5.0;
  double silence_threshold = 0.02;
  std::size_t silence_frames = 15;
  std::size_t gl_iters = 60;
};

struct Config {
  AudioConfig audio;
  ModelConfig model;
  TrainConfig train;
  InferConfig infer;
};

/// Missing keys keep their defaults; unknown keys are rejected.
Config ConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const Config& c);
Config LoadConfig(const std::string& path);

/// Keys under audio.* and model.* whose values differ, as "key: a != b".
std::vector<std::string> ArchitectureDiff(const Config& a, const Config& b);

std::string ToString(AttentionForm form);

}  // namespace vcseq
