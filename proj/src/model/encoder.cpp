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

#include "vcseq/model/encoder.hpp"

#include "vcseq/common/error.hpp"

namespace vcseq::model {

template <typename T>
Tensor<T> PyramidReduce(const Tensor<T>& x) {
  if (x.rank() != 2) throw ShapeError("pyramid reduce expects frames x width");
  if (x.rows() % 2 != 0) {
    throw ShapeError("pyramid reduce needs an even frame count, got " + std::to_string(x.rows()));
  }
  // Row-major storage already places frame 2i+1 right after frame 2i.
  return ad::Reshape(x, {x.rows() / 2, 2 * x.cols()});
}

std::size_t PaddedLength(std::size_t frames) {
  return (frames + kTimeReduction - 1) / kTimeReduction * kTimeReduction;
}

template <typename T>
Encoder<T> Encoder<T>::Create(const ModelConfig& cfg, std::size_t n_mels, CounterRng& rng) {
  Encoder enc;
  auto prenet_rng = rng.Split("prenet");
  enc.prenet = nn::Prenet<T>::Create(n_mels, {n_mels}, static_cast<T>(cfg.prenet_dropout),
                                     prenet_rng);
  nn::ConvBankConfig bank_cfg;
  bank_cfg.widths = cfg.bank_widths;
  bank_cfg.channels = cfg.bank_channels;
  auto bank_rng = rng.Split("bank");
  enc.bank = nn::ConvBank<T>::Create(n_mels, bank_cfg, bank_rng);
  for (std::size_t i = 0; i < cfg.highway_layers; ++i) {
    auto hw_rng = rng.Split("highway").Split(i);
    enc.highways.push_back(nn::Highway<T>::Create(n_mels, hw_rng));
  }
  const std::size_t h = cfg.enc_hidden;
  auto g0 = rng.Split("gru0");
  auto g1 = rng.Split("gru1");
  auto g2 = rng.Split("gru2");
  enc.gru0 = nn::BiGru<T>::Create(n_mels, h, g0);
  enc.gru1 = nn::BiGru<T>::Create(4 * h, h, g1);
  enc.gru2 = nn::BiGru<T>::Create(4 * h, h, g2);
  return enc;
}

template <typename T>
Tensor<T> Encoder<T>::FrontEnd(const Tensor<T>& mel, const Context& ctx) const {
  Tensor<T> x = prenet.Forward(mel, ctx);
  x = bank.Forward(x, ctx.mode);
  for (const auto& hw : highways) x = hw.Forward(x);
  return x;
}

template <typename T>
EncoderMemory<T> Encoder<T>::Encode(const Tensor<T>& mel, T pad_value, const Context& ctx) const {
  return EncodeBatch({mel}, pad_value, {ctx})[0];
}

template <typename T>
std::vector<EncoderMemory<T>> Encoder<T>::EncodeBatch(const std::vector<Tensor<T>>& mels,
                                                      T pad_value,
                                                      const std::vector<Context>& ctxs) const {
  if (ctxs.size() != mels.size()) throw ArgumentError("one context per sequence is required");
  const std::size_t n_mels = prenet.layers.front().in();
  std::vector<EncoderMemory<T>> memories(mels.size());
  std::vector<Tensor<T>> xs;
  std::vector<std::size_t> live;
  for (std::size_t b = 0; b < mels.size(); ++b) {
    const auto& mel = mels[b];
    if (mel.rank() != 2 || mel.cols() != n_mels) {
      throw ShapeError("encoder expects frames x " + std::to_string(n_mels) + ", got " +
                       ad::ShapeString(mel.shape()));
    }
    memories[b].source_frames = mel.rows();
    if (mel.rows() == 0) {
      memories[b].h = Tensor<T>::Zeros({0, memory_width()});
      continue;
    }
    Tensor<T> x = mel;
    const std::size_t padded = PaddedLength(mel.rows());
    if (padded > mel.rows()) {
      x = ad::Concat<T>({mel, Tensor<T>::Full({padded - mel.rows(), n_mels}, pad_value)}, 0);
    }
    xs.push_back(prenet.Forward(x, ctxs[b]));
    live.push_back(b);
  }
  if (xs.empty()) return memories;
  // Train and infer contexts must not be mixed within one batch.
  const ad::Mode mode = ctxs[live.front()].mode;
  for (std::size_t b : live) {
    if (ctxs[b].mode != mode) throw ArgumentError("mixed modes within one encoder batch");
  }
  xs = bank.ForwardBatch(xs, mode);
  for (std::size_t k = 0; k < live.size(); ++k) {
    Tensor<T> x = xs[k];
    for (const auto& hw : highways) x = hw.Forward(x);
    x = gru0.Forward(x);
    x = gru1.Forward(PyramidReduce(x));
    x = gru2.Forward(PyramidReduce(x));
    memories[live[k]].h = x;
  }
  return memories;
}

template <typename T>
void Encoder<T>::Collect(const std::string& prefix, nn::ParameterList<T>& out) const {
  prenet.Collect(prefix + ".prenet", out);
  bank.Collect(prefix + ".bank", out);
  for (std::size_t i = 0; i < highways.size(); ++i)
    highways[i].Collect(prefix + ".highway" + std::to_string(i), out);
  gru0.Collect(prefix + ".gru0", out);
  gru1.Collect(prefix + ".gru1", out);
  gru2.Collect(prefix + ".gru2", out);
}

template Tensor<float> PyramidReduce(const Tensor<float>&);
template Tensor<double> PyramidReduce(const Tensor<double>&);
template struct Encoder<float>;
template struct Encoder<double>;

}  // namespace vcseq::model
