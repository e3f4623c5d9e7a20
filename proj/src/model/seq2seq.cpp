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

#include "vcseq/model/seq2seq.hpp"

namespace vcseq::model {

template <typename T>
Seq2Seq<T> Seq2Seq<T>::Create(const ModelConfig& cfg, std::size_t n_mels, std::uint64_t seed) {
  Seq2Seq net;
  net.config = cfg;
  net.n_mels = n_mels;
  const CounterRng root(seed);
  auto enc_rng = root.Split("encoder");
  auto dec_rng = root.Split("decoder");
  net.encoder = Encoder<T>::Create(cfg, n_mels, enc_rng);
  net.decoder = Decoder<T>::Create(cfg, n_mels, net.encoder.memory_width(), dec_rng);
  return net;
}

template <typename T>
nn::ParameterList<T> Seq2Seq<T>::Parameters() const {
  nn::ParameterList<T> params;
  encoder.Collect("encoder", params);
  decoder.Collect("decoder", params);
  return params;
}

template struct Seq2Seq<float>;
template struct Seq2Seq<double>;

}  // namespace vcseq::model
