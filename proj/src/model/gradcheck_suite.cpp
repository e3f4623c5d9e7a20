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

#include "vcseq/model/gradcheck_suite.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <memory>

#include "vcseq/autodiff/grad_check.hpp"
#include "vcseq/autodiff/ops.hpp"
#include "vcseq/common/error.hpp"
#include "vcseq/model/seq2seq.hpp"

namespace vcseq::model {
namespace {

using TD = Tensor<double>;
using ParamsD = nn::ParameterList<double>;

constexpr double kLayerTol = 1e-4;
constexpr double kModelTol = 1e-3;

TD Random(const ad::Shape& shape, CounterRng& rng, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(ad::NumElements(shape));
  for (auto& x : v) x = rng.Uniform(lo, hi);
  return TD::FromData(shape, std::move(v));
}

void Jitter(ParamsD& params, CounterRng rng) {
  for (auto& p : params) {
    if (!p.trainable) continue;
    for (auto& v : p.tensor.mutable_data()) v += rng.Uniform(-0.1, 0.1);
  }
}

// Identity whose backward rule scales the gradient by 1.5.
TD Faulty(const TD& x) {
  auto node = std::make_shared<ad::Node<double>>();
  node->shape = x.shape();
  node->value.assign(x.data().begin(), x.data().end());
  node->requires_grad = x.requires_grad();
  node->op = "faulty";
  node->inputs = {x.node()};
  node->backward = [](ad::Node<double>& self) {
    double* g = self.inputs[0]->GradBuffer();
    for (std::size_t i = 0; i < self.grad.size(); ++i) g[i] += 1.5 * self.grad[i];
  };
  return TD(node);
}

struct Widths {
  std::size_t in;
  std::size_t hidden;
  std::size_t frames;
};

Widths ScaleWidths(CheckScale scale) {
  return scale == CheckScale::kTiny ? Widths{4, 5, 5} : Widths{8, 12, 8};
}

ModelConfig TinyModel(CheckScale scale) {
  ModelConfig cfg;
  const std::size_t h = scale == CheckScale::kTiny ? 8 : 16;
  cfg.enc_hidden = h;
  cfg.dec_hidden = h;
  cfg.attn_dim = h;
  cfg.dec_prenet = {h, h};
  cfg.loc_kernels = 2;
  cfg.loc_width = 3;
  cfg.highway_layers = 2;
  return cfg;
}

class Suite {
 public:
  explicit Suite(const CheckSuiteOptions& opts) : opts_(opts), root_(opts.seed) {}

  std::vector<ComponentCheck> Run() {
    const Widths w = ScaleWidths(opts_.scale);
    ModelConfig cfg = TinyModel(opts_.scale);

    {
      auto rng = Rng("linear");
      auto lin = nn::Linear<double>::Create(w.in, w.hidden, rng);
      const TD x = Random({w.frames, w.in}, rng);
      ParamsD p;
      lin.Collect("linear", p);
      Add("linear", p, kLayerTol, [&] { return lin.Forward(x); });
    }
    {
      auto rng = Rng("gru_cell");
      auto cell = nn::GruCell<double>::Create(w.in, w.hidden, rng);
      const TD x = Random({1, w.in}, rng);
      const TD h = Random({1, w.hidden}, rng, -0.9, 0.9);
      ParamsD p;
      cell.Collect("gru_cell", p);
      Add("gru_cell", p, kLayerTol, [&] { return cell.Step(x, h); });
    }
    {
      auto rng = Rng("bigru");
      auto bi = nn::BiGru<double>::Create(w.in, w.hidden / 2, rng);
      const TD x = Random({w.frames, w.in}, rng);
      ParamsD p;
      bi.Collect("bigru", p);
      Add("bigru", p, kLayerTol, [&] { return bi.Forward(x); });
    }
    {
      auto rng = Rng("highway");
      auto hw = nn::Highway<double>::Create(w.in, rng);
      const TD x = Random({w.frames, w.in}, rng);
      ParamsD p;
      hw.Collect("highway", p);
      Add("highway", p, kLayerTol, [&] { return hw.Forward(x); });
    }
    {
      auto rng = Rng("conv_bank");
      auto bank = nn::ConvBank<double>::Create(w.in, {}, rng);
      const TD x = Random({w.frames, w.in}, rng);
      ParamsD p;
      bank.Collect("conv_bank", p);
      Add("conv_bank", p, kLayerTol, [&] { return bank.Forward(x, ad::Mode::kTrain); });
    }
    {
      auto rng = Rng("attention_step");
      auto att = Attention<double>::Create(cfg, w.hidden, w.in, rng);
      const std::size_t len = 6;
      const TD memory = Random({len, w.in}, rng);
      const TD s_prev = Random({1, w.hidden}, rng, -0.9, 0.9);
      const TD alpha_prev = ad::Softmax(Random({1, len}, rng));
      ParamsD p;
      att.Collect("attention_step", p);
      Add("attention_step", p, kLayerTol, [&] {
        const auto step = att.Step(s_prev, alpha_prev, memory, att.Keys(memory));
        return ad::Concat<double>({step.alpha, step.context}, 1);
      });
    }
    {
      auto rng = Rng("residual_decoder");
      auto dec = Decoder<double>::Create(cfg, w.in, w.in, rng);
      auto state = dec.InitialState(3);
      state.dec1_h = Random({1, cfg.dec_hidden}, rng, -0.9, 0.9);
      state.dec2_h = Random({1, cfg.dec_hidden}, rng, -0.9, 0.9);
      const TD s = Random({1, cfg.dec_hidden}, rng, -0.9, 0.9);
      ParamsD p;
      dec.rnn1.Collect("residual_decoder.rnn1", p);
      dec.rnn2.Collect("residual_decoder.rnn2", p);
      Add("residual_decoder", p, kLayerTol, [&] {
        const auto out = dec.ResidualStep(s, state);
        return ad::Concat<double>({out.g1, out.g2}, 1);
      });
    }
    {
      auto rng = Rng("projection");
      auto dec = Decoder<double>::Create(cfg, w.in, w.in, rng);
      const TD g2 = Random({1, cfg.dec_hidden}, rng, -2.0, 2.0);
      ParamsD p;
      dec.projection.Collect("projection", p);
      Add("projection", p, kLayerTol, [&] { return dec.ProjectFrame(g2); });
    }
    {
      auto rng = Rng("end_to_end");
      cfg.prenet_dropout = 0.5;
      const std::size_t n_mels = opts_.scale == CheckScale::kTiny ? 8 : 16;
      auto net = Seq2Seq<double>::Create(cfg, n_mels, rng.NextU64());
      const std::size_t frames = 8;
      const TD source = Random({frames, n_mels}, rng, 0.0, 1.0);
      const TD target = Random({frames, n_mels}, rng, 0.0, 1.0);
      const std::uint64_t dropout_key = rng.NextU64();
      auto p = net.Parameters();
      Add("end_to_end", p, kModelTol, [&] {
        CounterRng dropout(dropout_key);
        const nn::Context ctx{ad::Mode::kTrain, &dropout};
        const auto memory = net.encoder.Encode(source, 0.0, ctx);
        return net.decoder.DecodeTeacherForced(memory, target, ctx).frames;
      });
    }
    return std::move(results_);
  }

 private:
  CounterRng Rng(const std::string& name) const { return root_.Split(name); }

  void Add(const std::string& name, ParamsD& params, double tol,
           const std::function<TD()>& forward) {
    Jitter(params, root_.Split("jitter").Split(name));
    auto readout_rng = root_.Split("readout").Split(name);
    TD weights;
    const bool faulty = opts_.fault == name;
    const auto loss = [&]() {
      TD y = forward();
      if (faulty) y = Faulty(y);
      if (!weights.defined()) weights = Random(y.shape(), readout_rng);
      return ad::Sum(ad::Mul(y, weights));
    };
    const auto report = ad::GradCheck(loss, params, {1e-5, tol});
    ComponentCheck c;
    c.component = name;
    c.max_rel_error = report.finite ? report.max_rel_error : std::numeric_limits<double>::infinity();
    c.tolerance = tol;
    c.worst_param = report.worst_param;
    c.worst_index = report.worst_index;
    c.worst_analytic = report.worst_analytic;
    c.worst_numeric = report.worst_numeric;
    c.entries = report.entries_checked;
    c.passed = report.passed;
    results_.push_back(c);
  }

  CheckSuiteOptions opts_;
  CounterRng root_;
  std::vector<ComponentCheck> results_;
};

}  // namespace

const std::vector<std::string>& CheckComponents() {
  static const std::vector<std::string> names = {
      "linear",         "gru_cell",         "bigru",      "highway",   "conv_bank",
      "attention_step", "residual_decoder", "projection", "end_to_end"};
  return names;
}

std::vector<ComponentCheck> RunGradientChecks(const CheckSuiteOptions& opts) {
  if (!opts.fault.empty()) {
    const auto& names = CheckComponents();
    if (std::find(names.begin(), names.end(), opts.fault) == names.end()) {
      throw ArgumentError("unknown component for fault injection: " + opts.fault);
    }
  }
  return Suite(opts).Run();
}

}  // namespace vcseq::model
