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

#include "vcseq/autodiff/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace vcseq::ad {

double RelativeError(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(1e-8, std::abs(analytic) + std::abs(numeric));
}

namespace {

// Ridders' polynomial extrapolation of central differences. Used only for
// entries whose plain central difference disagrees, typically gradients so
// small that roundoff in the loss difference dominates.
double RiddersDerivative(const std::function<double(double)>& f, double h) {
  constexpr int kTable = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  double a[kTable][kTable];
  a[0][0] = (f(h) - f(-h)) / (2.0 * h);
  double best = a[0][0];
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kTable; ++i) {
    h /= kShrink;
    a[0][i] = (f(h) - f(-h)) / (2.0 * h);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double e = std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        best = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
  }
  return best;
}

}  // namespace

GradCheckReport GradCheck(const std::function<Tensor<double>()>& loss_fn,
                          ParameterList<double>& params, const GradCheckOptions& opts) {
  GradCheckReport report;
  ZeroGrads(params);
  const Tensor<double> loss = loss_fn();
  if (!loss.AllFinite()) {
    report.finite = false;
    return report;
  }
  Backward(loss);

  for (auto& p : params) {
    if (!p.trainable) continue;
    const std::vector<double> analytic(p.tensor.grad().begin(), p.tensor.grad().end());
    auto theta = p.tensor.mutable_data();
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double saved = theta[i];
      theta[i] = saved + opts.eps;
      const double up = loss_fn().item();
      theta[i] = saved - opts.eps;
      const double down = loss_fn().item();
      theta[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        report.finite = false;
        return report;
      }
      double numeric = (up - down) / (2.0 * opts.eps);
      double rel = RelativeError(analytic[i], numeric);
      if (rel > opts.tol) {
        const auto shifted = [&](double d) {
          theta[i] = saved + d;
          const double v = loss_fn().item();
          theta[i] = saved;
          return v;
        };
        const double refined = RiddersDerivative(shifted, opts.eps * 100.0);
        if (std::isfinite(refined)) {
          numeric = refined;
          rel = RelativeError(analytic[i], numeric);
        }
      }
      ++report.entries_checked;
      if (rel > report.max_rel_error || report.worst_param.empty()) {
        report.max_rel_error = std::max(rel, report.max_rel_error);
        if (rel >= report.max_rel_error) {
          report.worst_param = p.name;
          report.worst_index = i;
          report.worst_analytic = analytic[i];
          report.worst_numeric = numeric;
        }
      }
    }
  }
  report.passed = report.finite && report.max_rel_error <= opts.tol;
  return report;
}

}  // namespace vcseq::ad
