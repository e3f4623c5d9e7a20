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

#include "oracles.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vcseq::testing {

std::vector<std::complex<double>> NaiveRealDft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      acc += x[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

std::vector<double> ReflectPad(const std::vector<double>& x, std::size_t pad) {
  // Grow one side at a time by mirroring the current buffer (excluding the
  // edge sample) until both sides reach `pad`.
  std::vector<double> left_part, right_part;
  std::vector<double> cur = x;
  std::size_t left = 0, right = 0;
  while (left < pad || right < pad) {
    const std::size_t n = cur.size();
    if (n < 2) {
      cur.insert(cur.begin(), cur.empty() ? 0.0 : cur.front());
      cur.push_back(cur.back());
      ++left;
      ++right;
      continue;
    }
    const std::size_t take_l = std::min(pad - left, n - 1);
    const std::size_t take_r = std::min(pad - right, n - 1);
    std::vector<double> next;
    for (std::size_t i = take_l; i >= 1; --i) next.push_back(cur[i]);
    next.insert(next.end(), cur.begin(), cur.end());
    for (std::size_t i = 1; i <= take_r; ++i) next.push_back(cur[n - 1 - i]);
    left += take_l;
    right += take_r;
    cur = std::move(next);
  }
  return cur;
}

std::vector<double> NaiveFrame(const std::vector<double>& x, std::size_t n_fft, std::size_t hop,
                               std::size_t win, std::size_t t) {
  const std::vector<double> padded = ReflectPad(x, n_fft / 2 + t * hop + n_fft);
  const std::size_t origin = n_fft / 2 + t * hop + n_fft;  // index of x[0] in padded
  std::vector<double> frame(n_fft, 0.0);
  const std::size_t offset = (n_fft - win) / 2;
  for (std::size_t k = 0; k < n_fft; ++k) {
    double w = 0.0;
    if (k >= offset && k < offset + win) {
      w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k - offset) / static_cast<double>(win)));
    }
    frame[k] = w * padded[origin + t * hop + k - n_fft / 2];
  }
  return frame;
}

std::vector<double> Solve(std::vector<double> a, std::vector<double> b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i * n + c] * x[c];
    x[i] = s / a[i * n + i];
  }
  return x;
}

std::vector<double> MinNormSolve(const std::vector<double>& w, std::size_t m, std::size_t n,
                                 const std::vector<double>& e) {
  std::vector<double> gram(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += w[i * n + k] * w[j * n + k];
      gram[i * m + j] = s;
    }
  }
  const std::vector<double> y = Solve(gram, e, m);
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) x[k] += w[i * n + k] * y[i];
  }
  return x;
}

double Correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TempDir::TempDir(const std::string& tag) {
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("vcseq-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

Pgm ParsePgm(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && (std::isspace(bytes[pos]) || bytes[pos] == '#')) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        ++pos;
      }
    }
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) t += static_cast<char>(bytes[pos++]);
    return t;
  };
  if (token() != "P5") throw std::runtime_error("not P5");
  Pgm p;
  p.width = std::stoul(token());
  p.height = std::stoul(token());
  if (std::stoul(token()) != 255) throw std::runtime_error("maxval must be 255");
  ++pos;  // single whitespace before the raster
  if (bytes.size() - pos != p.width * p.height) throw std::runtime_error("raster size mismatch");
  p.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return p;
}

std::vector<std::uint8_t> Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace vcseq::testing
