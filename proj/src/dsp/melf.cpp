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

#include "vcseq/dsp/melf.hpp"

#include <cmath>

#include "vcseq/common/bytes.hpp"
#include "vcseq/common/error.hpp"

namespace vcseq::dsp {

std::vector<std::uint8_t> EncodeMelf(const MelSpectrogram& mel) {
  ByteWriter w;
  w.PutString("MELF");
  w.Put<std::uint32_t>(kMelfVersion);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(mel.frames.rows));
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(mel.frames.cols));
  w.Put<std::uint32_t>(mel.sample_rate);
  w.PutBytes(mel.frames.data.data(), mel.frames.data.size() * sizeof(float));
  return std::move(w.bytes());
}

MelSpectrogram DecodeMelf(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  if (r.remaining() < 4 || r.GetString(4) != "MELF") throw FormatError("missing MELF magic");
  const auto version = r.Get<std::uint32_t>();
  if (version != kMelfVersion) {
    throw VersionError("unsupported melf version " + std::to_string(version));
  }
  const auto frames = r.Get<std::uint32_t>();
  const auto mels = r.Get<std::uint32_t>();
  MelSpectrogram mel;
  mel.sample_rate = r.Get<std::uint32_t>();
  const std::uint64_t count = static_cast<std::uint64_t>(frames) * mels;
  if (count * sizeof(float) != r.remaining()) throw FormatError("melf payload size mismatch");
  mel.frames = Matrix<float>(frames, mels);
  r.GetBytes(mel.frames.data.data(), count * sizeof(float));
  for (float v : mel.frames.data) {
    if (!std::isfinite(v)) throw FormatError("melf holds non-finite values");
  }
  return mel;
}

void WriteMelf(const MelSpectrogram& mel, const std::string& path) {
  WriteFileBytes(path, EncodeMelf(mel));
}

MelSpectrogram ReadMelf(const std::string& path) {
  try {
    return DecodeMelf(ReadFileBytes(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace vcseq::dsp
