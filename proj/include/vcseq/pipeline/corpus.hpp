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

#include "vcseq/config.hpp"
#include "vcseq/dsp/mel.hpp"

namespace vcseq::pipeline {

struct ManifestEntry {
  std::string id;
  std::string path;  // relative to the corpus root
};

/// `id|relative-path` per line. Blank lines and lines starting with '#' are
/// skipped; CRLF is accepted. Duplicate ids are a ValidationError.
std::vector<ManifestEntry> ParseManifest(const std::string& text);
std::vector<ManifestEntry> ReadManifest(const std::string& path);

struct Utterance {
  std::string id;
  std::string audio_path;
  std::string mel_path;
  std::size_t n_frames = 0;
};

struct FeatureCacheReport {
  std::size_t written = 0;
  std::size_t reused = 0;
};

/// Extracts un-normalized log-mel features for every manifest entry into
/// `<cache_dir>/<id>.melf`, skipping entries whose cache key (content hash of
/// the audio plus the front-end settings) is unchanged. Unreadable or missing
/// audio is collected and reported in one ValidationError.
std::vector<Utterance> ScanCorpus(const std::string& root, const std::string& manifest,
                                  const std::string& cache_dir, const AudioConfig& audio,
                                  FeatureCacheReport* report = nullptr);

/// Default cache location for a manifest: `<manifest dir>/mel_cache`.
std::string DefaultCacheDir(const std::string& manifest);

/// Raw log-mel of one cached utterance.
dsp::MelSpectrogram LoadMel(const Utterance& u);

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

/// 90/5/5 percent, rounding val and test down.
SplitSizes DefaultSplit(std::size_t n);
SplitSizes SplitFromConfig(const TrainConfig& cfg, std::size_t n);

struct PairedDataset {
  std::vector<std::pair<Utterance, Utterance>> pairs;  // sorted by id
  std::vector<std::size_t> train, val, test;           // indices into pairs
};

/// Pairs utterances sharing an id and splits them with a seeded shuffle.
PairedDataset MakePairs(const std::vector<Utterance>& source, const std::vector<Utterance>& target,
                        const SplitSizes& split, std::uint64_t seed);

/// Mel matrices for a dataset, normalized with fixed statistics.
struct MelPairs {
  std::vector<dsp::MelSpectrogram> source;
  std::vector<dsp::MelSpectrogram> target;
};

MelPairs LoadNormalizedPairs(const PairedDataset& data, const dsp::MelStats& stats);

/// Min/max over the raw log-mels of every distinct utterance in the dataset.
dsp::MelStats CorpusStats(const PairedDataset& data);

std::uint64_t ContentHash(const std::vector<std::uint8_t>& bytes, std::uint64_t seed = 0);

}  // namespace vcseq::pipeline
