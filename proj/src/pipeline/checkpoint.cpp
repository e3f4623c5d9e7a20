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

#include "vcseq/pipeline/checkpoint.hpp"

#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>
#include <zlib.h>

#include "vcseq/common/bytes.hpp"
#include "vcseq/common/error.hpp"

namespace vcseq::pipeline {
namespace {

using nlohmann::json;

std::uint32_t Crc32(const std::uint8_t* data, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  while (n > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, data, chunk);
    data += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

void PutFloats(ByteWriter& w, const std::vector<float>& v) {
  w.PutBytes(v.data(), v.size() * sizeof(float));
}

std::vector<float> GetFloats(const std::uint8_t* blobs, std::size_t blob_size, std::size_t offset,
                             std::size_t count, const std::string& what) {
  if (offset > blob_size || count > (blob_size - offset) / sizeof(float)) {
    throw CorruptionError("checkpoint blob for " + what + " lies outside the payload");
  }
  std::vector<float> out(count);
  std::memcpy(out.data(), blobs + offset, count * sizeof(float));
  return out;
}

std::size_t Count(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

}  // namespace

std::string ToString(Phase phase) { return phase == Phase::kPretrain ? "pretrain" : "adapt"; }

Phase PhaseFromString(const std::string& s) {
  if (s == "pretrain") return Phase::kPretrain;
  if (s == "adapt") return Phase::kAdapt;
  throw FormatError("unknown phase '" + s + "'");
}

bool Checkpoint::operator==(const Checkpoint& o) const {
  const bool best_equal = (std::isinf(best_loss) && std::isinf(o.best_loss)) || best_loss == o.best_loss;
  return version == o.version && ConfigToJson(config) == ConfigToJson(o.config) &&
         seed == o.seed && step == o.step && phase == o.phase && stats.min == o.stats.min &&
         stats.max == o.stats.max && tensors == o.tensors && has_optimizer == o.has_optimizer &&
         optimizer == o.optimizer && best_equal;
}

std::vector<std::string> Checkpoint::TensorNames() const {
  std::vector<std::string> names;
  for (const auto& t : tensors) names.push_back(t.name);
  return names;
}

std::vector<std::uint8_t> EncodeCheckpoint(const Checkpoint& ckpt) {
  json header;
  header["config"] = ConfigToJson(ckpt.config);
  header["seed"] = ckpt.seed;
  header["step"] = ckpt.step;
  header["phase"] = ToString(ckpt.phase);
  header["mel_stats"] = {{"min", ckpt.stats.min}, {"max", ckpt.stats.max}};
  header["best_loss"] = std::isfinite(ckpt.best_loss) ? json(ckpt.best_loss) : json(nullptr);

  std::size_t offset = 0;
  json dir = json::array();
  for (const auto& t : ckpt.tensors) {
    if (t.data.size() != Count(t.shape)) throw ShapeError("tensor " + t.name + " size mismatch");
    dir.push_back({{"name", t.name}, {"shape", t.shape}, {"trainable", t.trainable},
                   {"offset", offset}});
    offset += t.data.size() * sizeof(float);
  }
  header["tensors"] = dir;

  if (ckpt.has_optimizer) {
    json opt;
    opt["t"] = ckpt.optimizer.t;
    json entries = json::array();
    std::size_t k = 0;
    for (const auto& t : ckpt.tensors) {
      if (!t.trainable) continue;
      if (k >= ckpt.optimizer.m.size() || ckpt.optimizer.m[k].size() != t.data.size() ||
          ckpt.optimizer.v[k].size() != t.data.size()) {
        throw ShapeError("optimizer state does not match tensor " + t.name);
      }
      entries.push_back({{"name", t.name}, {"m_offset", offset},
                         {"v_offset", offset + t.data.size() * sizeof(float)}});
      offset += 2 * t.data.size() * sizeof(float);
      ++k;
    }
    opt["entries"] = entries;
    header["optimizer"] = opt;
  } else {
    header["optimizer"] = nullptr;
  }
  header["payload_bytes"] = offset;

  const std::string text = header.dump();
  ByteWriter w;
  w.PutString("VCSQ");
  w.Put<std::uint32_t>(ckpt.version);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(text.size()));
  w.PutString(text);
  for (const auto& t : ckpt.tensors) PutFloats(w, t.data);
  if (ckpt.has_optimizer) {
    for (std::size_t k = 0; k < ckpt.optimizer.m.size(); ++k) {
      PutFloats(w, ckpt.optimizer.m[k]);
      PutFloats(w, ckpt.optimizer.v[k]);
    }
  }
  const std::uint32_t crc = Crc32(w.bytes().data(), w.bytes().size());
  w.Put<std::uint32_t>(crc);
  return std::move(w.bytes());
}

Checkpoint DecodeCheckpoint(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), "VCSQ", 4) != 0) {
    throw CorruptionError("not a checkpoint (bad magic)");
  }
  ByteReader r(bytes);
  r.Skip(4);
  Checkpoint ckpt;
  ckpt.version = r.Get<std::uint32_t>();
  if (ckpt.version != kCheckpointVersion) {
    throw VersionError("checkpoint version " + std::to_string(ckpt.version) +
                       " is not supported (expected " + std::to_string(kCheckpointVersion) + ")");
  }
  std::uint32_t stored_crc;
  std::memcpy(&stored_crc, bytes.data() + bytes.size() - 4, 4);
  if (Crc32(bytes.data(), bytes.size() - 4) != stored_crc) {
    throw CorruptionError("checkpoint checksum mismatch");
  }
  const auto header_len = r.Get<std::uint32_t>();
  if (header_len > r.remaining() - 4) throw CorruptionError("checkpoint header overruns file");
  json header;
  try {
    header = json::parse(r.GetString(header_len));
  } catch (const json::exception& e) {
    throw CorruptionError(std::string("checkpoint header: ") + e.what());
  }
  const std::uint8_t* blobs = r.cursor();
  const std::size_t blob_size = r.remaining() - 4;

  try {
    ckpt.config = ConfigFromJson(header.at("config"));
    ckpt.seed = header.at("seed").get<std::uint64_t>();
    ckpt.step = header.at("step").get<std::uint64_t>();
    ckpt.phase = PhaseFromString(header.at("phase").get<std::string>());
    ckpt.stats.min = header.at("mel_stats").at("min").get<double>();
    ckpt.stats.max = header.at("mel_stats").at("max").get<double>();
    if (!header.at("best_loss").is_null()) ckpt.best_loss = header["best_loss"].get<double>();
    if (header.at("payload_bytes").get<std::size_t>() != blob_size) {
      throw CorruptionError("checkpoint payload length mismatch");
    }
    for (const auto& e : header.at("tensors")) {
      StoredTensor t;
      t.name = e.at("name").get<std::string>();
      t.shape = e.at("shape").get<std::vector<std::size_t>>();
      t.trainable = e.at("trainable").get<bool>();
      t.data = GetFloats(blobs, blob_size, e.at("offset").get<std::size_t>(), Count(t.shape), t.name);
      ckpt.tensors.push_back(std::move(t));
    }
    if (!header.at("optimizer").is_null()) {
      const auto& opt = header["optimizer"];
      ckpt.has_optimizer = true;
      ckpt.optimizer.t = opt.at("t").get<std::int64_t>();
      std::size_t k = 0;
      for (const auto& t : ckpt.tensors) {
        if (!t.trainable) continue;
        const auto& e = opt.at("entries").at(k++);
        if (e.at("name").get<std::string>() != t.name) {
          throw CorruptionError("optimizer entry order does not match tensors");
        }
        ckpt.optimizer.m.push_back(
            GetFloats(blobs, blob_size, e.at("m_offset").get<std::size_t>(), t.data.size(), t.name));
        ckpt.optimizer.v.push_back(
            GetFloats(blobs, blob_size, e.at("v_offset").get<std::size_t>(), t.data.size(), t.name));
      }
      if (k != opt.at("entries").size()) throw CorruptionError("extra optimizer entries");
    }
  } catch (const json::exception& e) {
    throw CorruptionError(std::string("checkpoint header: ") + e.what());
  }
  return ckpt;
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  // Write-then-rename so an interrupted save never clobbers the last good file.
  const std::string tmp = path + ".tmp";
  WriteFileBytes(tmp, EncodeCheckpoint(ckpt));
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IoError("cannot rename " + tmp);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  try {
    return DecodeCheckpoint(ReadFileBytes(path));
  } catch (const CorruptionError& e) {
    throw CorruptionError(path + ": " + e.what());
  } catch (const VersionError& e) {
    throw VersionError(path + ": " + e.what());
  }
}

void StoreModel(const model::Seq2Seq<float>& model, const ad::AdamState<float>* adam,
                Checkpoint& ckpt) {
  ckpt.tensors.clear();
  for (const auto& p : model.Parameters()) {
    const auto d = p.tensor.data();
    ckpt.tensors.push_back({p.name, p.tensor.shape(), p.trainable, std::vector<float>(d.begin(), d.end())});
  }
  ckpt.has_optimizer = adam != nullptr && !adam->empty();
  ckpt.optimizer = {};
  if (ckpt.has_optimizer) {
    ckpt.optimizer.t = adam->t;
    ckpt.optimizer.m = adam->m;
    ckpt.optimizer.v = adam->v;
  }
}

model::Seq2Seq<float> RestoreModel(const Checkpoint& ckpt) {
  auto model = model::Seq2Seq<float>::Create(ckpt.config.model, ckpt.config.audio.n_mels, ckpt.seed);
  auto params = model.Parameters();
  if (params.size() != ckpt.tensors.size()) {
    throw ValidationError("checkpoint holds " + std::to_string(ckpt.tensors.size()) +
                          " tensors, model expects " + std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& src = ckpt.tensors[i];
    auto& dst = params[i];
    if (src.name != dst.name || src.shape != dst.tensor.shape() || src.trainable != dst.trainable) {
      throw ValidationError("checkpoint tensor '" + src.name + "' " + ad::ShapeString(src.shape) +
                            " does not match model tensor '" + dst.name + "' " +
                            ad::ShapeString(dst.tensor.shape()));
    }
    auto out = dst.tensor.mutable_data();
    std::copy(src.data.begin(), src.data.end(), out.begin());
  }
  return model;
}

ad::AdamState<float> RestoreOptimizer(const Checkpoint& ckpt, const model::Seq2Seq<float>& model) {
  auto params = model.Parameters();
  ad::AdamState<float> state = ad::MakeAdamState(params);
  if (!ckpt.has_optimizer) return state;
  if (ckpt.optimizer.m.size() != state.m.size()) {
    throw ValidationError("optimizer state does not match the model");
  }
  for (std::size_t k = 0; k < state.m.size(); ++k) {
    if (ckpt.optimizer.m[k].size() != state.m[k].size()) {
      throw ValidationError("optimizer moment size mismatch");
    }
  }
  state.t = ckpt.optimizer.t;
  state.m = ckpt.optimizer.m;
  state.v = ckpt.optimizer.v;
  return state;
}

}  // namespace vcseq::pipeline
