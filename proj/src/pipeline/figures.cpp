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

#include "vcseq/pipeline/figures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "vcseq/common/error.hpp"

namespace vcseq::pipeline {

std::string MatrixToCsv(const dsp::Matrix<float>& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) out += ',';
      out += fmt::format("{}", m(r, c));
    }
    out += '\n';
  }
  return out;
}

dsp::Matrix<float> MatrixFromCsv(const std::string& text) {
  std::vector<std::vector<float>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<float> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      float v = 0.0f;
      const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + comma, v);
      if (ec != std::errc() || ptr != line.data() + comma) throw FormatError("bad CSV number");
      row.push_back(v);
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows[0].size()) throw FormatError("ragged CSV rows");
    rows.push_back(std::move(row));
  }
  dsp::Matrix<float> m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < m.rows; ++r) std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  return m;
}

std::vector<std::uint8_t> EncodePgm(const dsp::Matrix<float>& m) {
  const std::string header = fmt::format("P5\n{} {}\n255\n", m.cols, m.rows);
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + m.data.size());
  for (float v : m.data) {
    const double clamped = std::clamp(static_cast<double>(v), 0.0, 1.0);
    out.push_back(static_cast<std::uint8_t>(std::lround(255.0 * clamped)));
  }
  return out;
}

dsp::Matrix<float> MelImage(const dsp::Matrix<float>& frames) {
  dsp::Matrix<float> img(frames.cols, frames.rows);
  for (std::size_t t = 0; t < frames.rows; ++t) {
    for (std::size_t b = 0; b < frames.cols; ++b) img(frames.cols - 1 - b, t) = frames(t, b);
  }
  return img;
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace vcseq::pipeline
