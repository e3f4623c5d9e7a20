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

#include "vcseq/config.hpp"

#include <fstream>
#include <set>

#include "vcseq/common/error.hpp"

namespace vcseq {
namespace {

using nlohmann::json;

void RejectUnknown(const json& section, const std::string& name,
                   const std::set<std::string>& known) {
  if (!section.is_object()) throw ArgumentError("config section '" + name + "' must be an object");
  for (const auto& [key, _] : section.items()) {
    if (!known.count(key)) throw ArgumentError("unknown config key '" + name + "." + key + "'");
  }
}

template <typename V>
void Read(const json& section, const char* key, V& out) {
  if (section.contains(key)) out = section.at(key).get<V>();
}

}  // namespace

std::string ToString(AttentionForm form) {
  return form == AttentionForm::kMultiplicative ? "multiplicative" : "additive";
}

Config ConfigFromJson(const json& j) {
  Config c;
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  RejectUnknown(j, "<root>", {"audio", "model", "train", "infer"});
  try {
    if (j.contains("audio")) {
      const auto& a = j.at("audio");
      RejectUnknown(a, "audio", {"n_fft", "hop", "win", "n_mels", "fmin", "fmax", "sample_rate"});
      Read(a, "n_fft", c.audio.n_fft);
      Read(a, "hop", c.audio.hop);
      Read(a, "win", c.audio.win);
      Read(a, "n_mels", c.audio.n_mels);
      Read(a, "fmin", c.audio.fmin);
      Read(a, "fmax", c.audio.fmax);
      Read(a, "sample_rate", c.audio.sample_rate);
    }
    if (j.contains("model")) {
      const auto& m = j.at("model");
      RejectUnknown(m, "model",
                    {"enc_hidden", "dec_hidden", "attn_dim", "attn_form", "beta", "loc_kernels",
                     "loc_width", "prenet_dropout", "dec_prenet", "bank_widths", "bank_channels",
                     "highway_layers"});
      Read(m, "enc_hidden", c.model.enc_hidden);
      Read(m, "dec_hidden", c.model.dec_hidden);
      Read(m, "attn_dim", c.model.attn_dim);
      if (m.contains("attn_form")) {
        const auto form = m.at("attn_form").get<std::string>();
        if (form == "multiplicative") {
          c.model.attn_form = AttentionForm::kMultiplicative;
        } else if (form == "additive") {
          c.model.attn_form = AttentionForm::kAdditive;
        } else {
          throw ArgumentError("model.attn_form must be multiplicative or additive");
        }
      }
      Read(m, "beta", c.model.beta);
      Read(m, "loc_kernels", c.model.loc_kernels);
      Read(m, "loc_width", c.model.loc_width);
      Read(m, "prenet_dropout", c.model.prenet_dropout);
      Read(m, "dec_prenet", c.model.dec_prenet);
      Read(m, "bank_widths", c.model.bank_widths);
      Read(m, "bank_channels", c.model.bank_channels);
      Read(m, "highway_layers", c.model.highway_layers);
    }
    if (j.contains("train")) {
      const auto& t = j.at("train");
      RejectUnknown(t, "train",
                    {"lr_pretrain", "lr_adapt", "beta1", "beta2", "batch_size", "max_steps",
                     "save_every", "seed", "log_every", "grad_clip", "split"});
      Read(t, "lr_pretrain", c.train.lr_pretrain);
      Read(t, "lr_adapt", c.train.lr_adapt);
      Read(t, "beta1", c.train.beta1);
      Read(t, "beta2", c.train.beta2);
      Read(t, "batch_size", c.train.batch_size);
      Read(t, "max_steps", c.train.max_steps);
      Read(t, "save_every", c.train.save_every);
      Read(t, "seed", c.train.seed);
      Read(t, "log_every", c.train.log_every);
      Read(t, "grad_clip", c.train.grad_clip);
      Read(t, "split", c.train.split);
    }
    if (j.contains("infer")) {
      const auto& i = j.at("infer");
      RejectUnknown(i, "infer",
                    {"max_steps_factor", "silence_threshold", "silence_frames", "gl_iters"});
      Read(i, "max_steps_factor", c.infer.max_steps_factor);
      Read(i, "silence_threshold", c.infer.silence_threshold);
      Read(i, "silence_frames", c.infer.silence_frames);
      Read(i, "gl_iters", c.infer.gl_iters);
    }
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("bad config value: ") + e.what());
  }
  if (c.audio.n_mels == 0 || c.model.enc_hidden == 0 || c.model.dec_hidden == 0 ||
      c.model.attn_dim == 0 || c.model.beta <= 0.0 || c.model.loc_width % 2 == 0 ||
      c.train.batch_size == 0) {
    throw ArgumentError("config has a zero width, non-positive beta, even loc_width or zero batch");
  }
  if (c.train.split.size() != 0 && c.train.split.size() != 3) {
    throw ArgumentError("train.split must list three sizes (train, val, test)");
  }
  return c;
}

json ConfigToJson(const Config& c) {
  json j;
  j["audio"] = {{"n_fft", c.audio.n_fft},   {"hop", c.audio.hop},   {"win", c.audio.win},
                {"n_mels", c.audio.n_mels}, {"fmin", c.audio.fmin}, {"fmax", c.audio.fmax},
                {"sample_rate", c.audio.sample_rate}};
  j["model"] = {{"enc_hidden", c.model.enc_hidden},
                {"dec_hidden", c.model.dec_hidden},
                {"attn_dim", c.model.attn_dim},
                {"attn_form", ToString(c.model.attn_form)},
                {"beta", c.model.beta},
                {"loc_kernels", c.model.loc_kernels},
                {"loc_width", c.model.loc_width},
                {"prenet_dropout", c.model.prenet_dropout},
                {"dec_prenet", c.model.dec_prenet},
                {"bank_widths", c.model.bank_widths},
                {"bank_channels", c.model.bank_channels},
                {"highway_layers", c.model.highway_layers}};
  j["train"] = {{"lr_pretrain", c.train.lr_pretrain}, {"lr_adapt", c.train.lr_adapt},
                {"beta1", c.train.beta1},             {"beta2", c.train.beta2},
                {"batch_size", c.train.batch_size},   {"max_steps", c.train.max_steps},
                {"save_every", c.train.save_every},   {"seed", c.train.seed},
                {"log_every", c.train.log_every},     {"grad_clip", c.train.grad_clip},
                {"split", c.train.split}};
  j["infer"] = {{"max_steps_factor", c.infer.max_steps_factor},
                {"silence_threshold", c.infer.silence_threshold},
                {"silence_frames", c.infer.silence_frames},
                {"gl_iters", c.infer.gl_iters}};
  return j;
}

Config LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ArgumentError("config " + path + " is not valid JSON: " + e.what());
  }
  return ConfigFromJson(j);
}

std::vector<std::string> ArchitectureDiff(const Config& a, const Config& b) {
  const json ja = ConfigToJson(a);
  const json jb = ConfigToJson(b);
  std::vector<std::string> diff;
  for (const char* section : {"audio", "model"}) {
    for (const auto& [key, value] : ja.at(section).items()) {
      const auto& other = jb.at(section).at(key);
      if (value != other) {
        diff.push_back(std::string(section) + "." + key + ": " + value.dump() + " != " +
                       other.dump());
      }
    }
  }
  return diff;
}

}  // namespace vcseq
