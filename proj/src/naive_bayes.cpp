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
#include <limits>

namespace bos::nb {

// Feature values are treated as (possibly fractional) counts, so [0, 1]
// scaled spectrogram cells are valid input.
NBModel fit(const Matrix<double>& x, std::span<const int> y, int n_classes, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "nb_alpha must be > 0");
  if ((x.array() < 0.0).any()) {
    throw Error(ErrorKind::NegativeFeature, "multinomial naive Bayes needs non-negative features");
  }
  const Index n_features = x.cols();
  Matrix<double> counts = Matrix<double>::Zero(n_classes, n_features);
  Vector<double> class_sizes = Vector<double>::Zero(n_classes);
  for (Index i = 0; i < x.rows(); ++i) {
    counts.row(y[static_cast<std::size_t>(i)]) += x.row(i);
    class_sizes[y[static_cast<std::size_t>(i)]] += 1.0;
  }

  NBModel m;
  m.class_log_prior = (class_sizes / static_cast<double>(x.rows())).array().log().matrix();
  m.feature_log_prob.resize(n_classes, n_features);
  for (int c = 0; c < n_classes; ++c) {
    const double denom = counts.row(c).sum() + alpha * static_cast<double>(n_features);
    m.feature_log_prob.row(c) = ((counts.row(c).array() + alpha) / denom).log().matrix();
  }
  return m;
}

Matrix<double> log_posterior(const NBModel& m, const Matrix<double>& x) {
  Matrix<double> joint = x * m.feature_log_prob.transpose();
  joint.rowwise() += m.class_log_prior.transpose();
  for (Index i = 0; i < joint.rows(); ++i) {
    const double top = joint.row(i).maxCoeff();
    const double lse = top + std::log((joint.row(i).array() - top).exp().sum());
    joint.row(i).array() -= lse;
  }
  return joint;
}

}  // namespace bos::nb
