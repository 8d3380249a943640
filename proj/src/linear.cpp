// Copyright 2026 The bag-of-sounds Authors
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

#include "bos/classifiers.hpp"

#include <cmath>

namespace bos::linear {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double objective(LinearLoss loss, const Vector<double>& w, double b, const Matrix<double>& x,
                 const Vector<double>& targets, double lambda) {
  const Vector<double> margins = ((x * w).array() + b).matrix().cwiseProduct(targets);
  double data = 0.0;
  for (Index i = 0; i < margins.size(); ++i) {
    data += loss == LinearLoss::Logistic ? softplus(-margins[i]) : std::max(0.0, 1.0 - margins[i]);
  }
  return data / static_cast<double>(x.rows()) + lambda * w.squaredNorm();
}

Gradient gradient(LinearLoss loss, const Vector<double>& w, double b, const Matrix<double>& x,
                  const Vector<double>& targets, double lambda) {
  const Vector<double> margins = ((x * w).array() + b).matrix().cwiseProduct(targets);
  // coeff[i] = d loss_i / d s_i
  Vector<double> coeff(margins.size());
  for (Index i = 0; i < margins.size(); ++i) {
    if (loss == LinearLoss::Logistic) {
      coeff[i] = -targets[i] * sigmoid(-margins[i]);
    } else {
      coeff[i] = margins[i] < 1.0 ? -targets[i] : 0.0;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  return {x.transpose() * coeff * inv_n + 2.0 * lambda * w, coeff.sum() * inv_n};
}

BinaryFit fit_binary(LinearLoss loss, const Matrix<double>& x, const Vector<double>& targets,
                     const TrainConfig& cfg) {
  BinaryFit fit{Vector<double>::Zero(x.cols()), 0.0, 0, 0.0};
  double prev = objective(loss, fit.w, fit.b, x, targets, cfg.l2_lambda);
  for (int t = 0; t < cfg.max_epochs; ++t) {
    const double step = cfg.learning_rate / (1.0 + t);
    const Gradient g = gradient(loss, fit.w, fit.b, x, targets, cfg.l2_lambda);
    fit.w -= step * g.w;
    fit.b -= step * g.b;
    fit.epochs = t + 1;
    const double cur = objective(loss, fit.w, fit.b, x, targets, cfg.l2_lambda);
    const bool converged = std::abs(prev - cur) < cfg.tolerance;
    prev = cur;
    if (converged) break;
  }
  fit.objective = prev;
  return fit;
}

LinearModel fit(LinearLoss loss, const Matrix<double>& x, std::span<const int> y, int n_classes,
                const TrainConfig& cfg, std::size_t threads) {
  LinearModel m{Matrix<double>(n_classes, x.cols()), Vector<double>(n_classes), loss};
  parallel_for(static_cast<std::size_t>(n_classes), threads, [&](std::size_t c) {
    Vector<double> targets(x.rows());
    for (Index i = 0; i < x.rows(); ++i) {
      targets[i] = y[static_cast<std::size_t>(i)] == static_cast<int>(c) ? 1.0 : -1.0;
    }
    const BinaryFit f = fit_binary(loss, x, targets, cfg);
    m.weights.row(static_cast<Index>(c)) = f.w.transpose();
    m.bias[static_cast<Index>(c)] = f.b;
  });
  return m;
}

}  // namespace bos::linear
