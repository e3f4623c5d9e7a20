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

#include "vcseq/pipeline/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "vcseq/common/bytes.hpp"
#include "vcseq/common/error.hpp"
#include "vcseq/common/rng.hpp"
#include "vcseq/dsp/melf.hpp"
#include "vcseq/dsp/resample.hpp"

namespace vcseq::pipeline {
namespace fs = std::filesystem;

namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

void CheckId(const std::string& id, std::size_t line) {
  if (id.empty() || id == "." || id == ".." || id.find_first_of("/\\") != std::string::npos) {
    throw ValidationError(fmt::format("manifest line {}: invalid id '{}'", line, id));
  }
}

std::string CacheKey(const std::vector<std::uint8_t>& wav, const AudioConfig& audio) {
  const std::string settings = ConfigToJson(Config{audio, {}, {}, {}})["audio"].dump();
  const std::vector<std::uint8_t> settings_bytes(settings.begin(), settings.end());
  return fmt::format("{:016x}{:016x}", ContentHash(wav), ContentHash(settings_bytes, 1));
}

std::string ReadText(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  return std::string(bytes.begin(), bytes.end());
}

}  // namespace

std::uint64_t ContentHash(const std::vector<std::uint8_t>& bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ (seed * 0x9e3779b97f4a7c15ULL);
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<ManifestEntry> ParseManifest(const std::string& text) {
  std::vector<ManifestEntry> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos) {
      throw ValidationError(fmt::format("manifest line {}: expected 'id|path'", line_no));
    }
    ManifestEntry e{Trim(line.substr(0, bar)), Trim(line.substr(bar + 1))};
    CheckId(e.id, line_no);
    if (e.path.empty()) throw ValidationError(fmt::format("manifest line {}: empty path", line_no));
    if (!seen.insert(e.id).second) {
      throw ValidationError(fmt::format("manifest line {}: duplicate id '{}'", line_no, e.id));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> ReadManifest(const std::string& path) {
  return ParseManifest(ReadText(path));
}

std::string DefaultCacheDir(const std::string& manifest) {
  return (fs::path(manifest).parent_path() / "mel_cache").string();
}

std::vector<Utterance> ScanCorpus(const std::string& root, const std::string& manifest,
                                  const std::string& cache_dir, const AudioConfig& audio,
                                  FeatureCacheReport* report) {
  const auto entries = ReadManifest(manifest);
  fs::create_directories(cache_dir);
  const dsp::MelFilterbank fb = dsp::BuildMelFilterbank(audio);
  const dsp::FrameParams params = dsp::FrameParamsFrom(audio);

  const std::size_t n = entries.size();
  std::vector<Utterance> out(n);
  std::vector<std::string> problems(n);
  std::vector<char> written(n, 0);
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const ManifestEntry& e = entries[static_cast<std::size_t>(i)];
    Utterance& u = out[static_cast<std::size_t>(i)];
    u.id = e.id;
    u.audio_path = (fs::path(root) / e.path).string();
    u.mel_path = (fs::path(cache_dir) / (e.id + ".melf")).string();
    const std::string key_path = u.mel_path + ".key";
    try {
      if (!fs::exists(u.audio_path)) throw IoError("missing audio file");
      const auto wav = ReadFileBytes(u.audio_path);
      const std::string key = CacheKey(wav, audio);
      bool fresh = false;
      if (fs::exists(u.mel_path) && fs::exists(key_path) && Trim(ReadText(key_path)) == key) {
        try {
          u.n_frames = dsp::ReadMelf(u.mel_path).n_frames();
          fresh = true;
        } catch (const Error&) {
          fresh = false;  // damaged cache: rebuild
        }
      }
      if (!fresh) {
        dsp::AudioBuffer buf = dsp::DecodeWav(wav);
        if (buf.sample_rate != audio.sample_rate) buf = dsp::Resample(buf, audio.sample_rate);
        const dsp::MelSpectrogram mel = dsp::LogMelSpectrogram(buf, fb, params);
        dsp::WriteMelf(mel, u.mel_path);
        WriteFileBytes(key_path, std::vector<std::uint8_t>(key.begin(), key.end()));
        u.n_frames = mel.n_frames();
        written[static_cast<std::size_t>(i)] = 1;
      }
      if (u.n_frames == 0) throw ValidationError("no audio samples");
    } catch (const std::exception& ex) {
      problems[static_cast<std::size_t>(i)] = fmt::format("{} ({}): {}", e.id, u.audio_path, ex.what());
    }
  }

  std::string report_text;
  std::size_t failures = 0;
  for (const auto& p : problems) {
    if (p.empty()) continue;
    ++failures;
    report_text += "\n  " + p;
  }
  if (failures > 0) {
    throw ValidationError(fmt::format("{} unusable utterance(s) in {}:{}", failures, manifest,
                                      report_text));
  }
  if (report) {
    report->written = static_cast<std::size_t>(std::count(written.begin(), written.end(), 1));
    report->reused = n - report->written;
  }
  return out;
}

dsp::MelSpectrogram LoadMel(const Utterance& u) { return dsp::ReadMelf(u.mel_path); }

SplitSizes DefaultSplit(std::size_t n) {
  SplitSizes s;
  s.val = n * 5 / 100;
  s.test = n * 5 / 100;
  s.train = n - s.val - s.test;
  return s;
}

SplitSizes SplitFromConfig(const TrainConfig& cfg, std::size_t n) {
  if (cfg.split.empty()) return DefaultSplit(n);
  if (cfg.split.size() != 3) {
    throw ArgumentError(fmt::format("split needs three sizes (train, val, test), got {}",
                                    cfg.split.size()));
  }
  return {cfg.split.at(0), cfg.split.at(1), cfg.split.at(2)};
}

PairedDataset MakePairs(const std::vector<Utterance>& source, const std::vector<Utterance>& target,
                        const SplitSizes& split, std::uint64_t seed) {
  std::map<std::string, const Utterance*> by_id;
  for (const auto& u : target) by_id[u.id] = &u;
  PairedDataset data;
  for (const auto& u : source) {
    const auto it = by_id.find(u.id);
    if (it != by_id.end()) data.pairs.emplace_back(u, *it->second);
  }
  if (data.pairs.empty()) throw ValidationError("source and target corpora share no ids");
  std::sort(data.pairs.begin(), data.pairs.end(),
            [](const auto& a, const auto& b) { return a.first.id < b.first.id; });

  const std::size_t n = data.pairs.size();
  if (split.train + split.val + split.test > n) {
    throw ArgumentError(fmt::format("split {}/{}/{} needs {} pairs, have {}", split.train,
                                    split.val, split.test,
                                    split.train + split.val + split.test, n));
  }
  if (split.train == 0) throw ArgumentError("training split is empty");
  if (split.train + split.val + split.test < n) {
    spdlog::info("split uses {} of {} pairs", split.train + split.val + split.test, n);
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  CounterRng rng = CounterRng(seed).Split("split");
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.Below(i)]);

  auto take = [&](std::size_t begin, std::size_t count) {
    std::vector<std::size_t> idx(order.begin() + static_cast<std::ptrdiff_t>(begin),
                                 order.begin() + static_cast<std::ptrdiff_t>(begin + count));
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  data.train = take(0, split.train);
  data.val = take(split.train, split.val);
  data.test = take(split.train + split.val, split.test);
  return data;
}

MelPairs LoadNormalizedPairs(const PairedDataset& data, const dsp::MelStats& stats) {
  MelPairs out;
  out.source.reserve(data.pairs.size());
  out.target.reserve(data.pairs.size());
  for (const auto& [src, tgt] : data.pairs) {
    out.source.push_back(dsp::Normalize(LoadMel(src), stats));
    out.target.push_back(src.mel_path == tgt.mel_path ? out.source.back()
                                                       : dsp::Normalize(LoadMel(tgt), stats));
  }
  return out;
}

dsp::MelStats CorpusStats(const PairedDataset& data) {
  std::vector<dsp::MelSpectrogram> mels;
  std::set<std::string> seen;
  for (const auto& [src, tgt] : data.pairs) {
    for (const Utterance* u : {&src, &tgt}) {
      if (seen.insert(u->mel_path).second) mels.push_back(LoadMel(*u));
    }
  }
  return dsp::ComputeStats(mels);
}

}  // namespace vcseq::pipeline
