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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

namespace bos {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_shape(const TrainedModel& m, const Matrix<double>& x) {
  if (x.rows() > 0 && x.cols() != m.n_features) {
    throw Error(ErrorKind::ShapeMismatch, "model expects " + std::to_string(m.n_features) +
                                              " features, got " + std::to_string(x.cols()));
  }
}

// The constant model used when training data holds one class.
TrainedModel constant_model(Method method, int label, int n_classes, Index n_features) {
  TrainedModel out;
  out.n_classes = n_classes;
  out.n_features = n_features;
  switch (method) {
    case Method::NB: {
      NBModel nb;
      nb.class_log_prior = Vector<double>::Constant(n_classes, -std::numeric_limits<double>::infinity());
      nb.class_log_prior[label] = 0.0;
      nb.feature_log_prob = Matrix<double>::Constant(n_classes, n_features,
                                                     -std::log(static_cast<double>(std::max<Index>(1, n_features))));
      out.model = std::move(nb);
      break;
    }
    case Method::SVM:
    case Method::LR: {
      LinearModel lm{Matrix<double>::Zero(n_classes, n_features), Vector<double>::Constant(n_classes, -1.0),
                     method == Method::SVM ? LinearLoss::Hinge : LinearLoss::Logistic};
      lm.bias[label] = 1.0;
      out.model = std::move(lm);
      break;
    }
    case Method::RF: {
      TreeNode leaf;
      leaf.histogram = Vector<double>::Zero(n_classes);
      leaf.histogram[label] = 1.0;
      out.model = ForestModel{{DecisionTree{{leaf}}}};
      break;
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::NB: return "nb";
    case Method::SVM: return "svm";
    case Method::LR: return "lr";
    case Method::RF: return "rf";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  std::string v(s);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Method m : kAllMethods) {
    if (to_string(m) == v) return m;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(s) + "' (nb, svm, lr, rf)");
}

Method TrainedModel::method() const {
  return std::visit(Overloaded{
                        [](const NBModel&) { return Method::NB; },
                        [](const LinearModel& m) { return m.loss == LinearLoss::Hinge ? Method::SVM : Method::LR; },
                        [](const ForestModel&) { return Method::RF; },
                    },
                    model);
}

TrainedModel train(const Matrix<double>& x, std::span<const int> y, int n_classes,
                   const TrainConfig& cfg, std::vector<std::string>* warnings, std::size_t threads) {
  if (threads == 0) threads = worker_count();
  if (n_classes < 1) throw Error(ErrorKind::InvalidArgument, "need at least one class");
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw Error(ErrorKind::ShapeMismatch, "feature rows and labels differ in count");
  }
  if (x.rows() < 1) throw Error(ErrorKind::InvalidArgument, "cannot train on zero samples");
  if (!x.allFinite()) throw Error(ErrorKind::NonFiniteFeature, "features contain NaN or infinity");
  std::set<int> distinct;
  for (int label : y) {
    if (label < 0 || label >= n_classes) {
      throw Error(ErrorKind::InvalidArgument, "label index " + std::to_string(label) + " out of range");
    }
    distinct.insert(label);
  }
  if (cfg.method == Method::NB && (x.array() < 0.0).any()) {
    throw Error(ErrorKind::NegativeFeature, "multinomial naive Bayes needs non-negative features");
  }

  if (distinct.size() == 1) {
    if (warnings) {
      warnings->push_back("SingleClass: training data holds only class index " +
                          std::to_string(*distinct.begin()) + "; model is constant");
    }
    return constant_model(cfg.method, *distinct.begin(), n_classes, x.cols());
  }

  TrainedModel out;
  out.n_classes = n_classes;
  out.n_features = x.cols();
  switch (cfg.method) {
    case Method::NB:
      out.model = nb::fit(x, y, n_classes, cfg.nb_alpha);
      break;
    case Method::SVM:
      out.model = linear::fit(LinearLoss::Hinge, x, y, n_classes, cfg, threads);
      break;
    case Method::LR:
      out.model = linear::fit(LinearLoss::Logistic, x, y, n_classes, cfg, threads);
      break;
    case Method::RF:
      out.model = forest::fit(x, y, n_classes, cfg, threads);
      break;
  }
  return out;
}

std::vector<int> argmax_rows(const Matrix<double>& scores) {
  std::vector<int> out(static_cast<std::size_t>(scores.rows()));
  for (Index i = 0; i < scores.rows(); ++i) {
    int best = 0;
    for (Index c = 1; c < scores.cols(); ++c) {
      if (scores(i, c) > scores(i, best)) best = static_cast<int>(c);
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

namespace {

Matrix<double> margins(const LinearModel& m, const Matrix<double>& x) {
  Matrix<double> s = x * m.weights.transpose();
  s.rowwise() += m.bias.transpose();
  return s;
}

Matrix<double> votes(const ForestModel& m, int n_classes, const Matrix<double>& x) {
  Matrix<double> v = Matrix<double>::Zero(x.rows(), n_classes);
  for (const auto& tree : m.trees) {
    for (Index i = 0; i < x.rows(); ++i) {
      const auto& hist = tree.leaf_for(x.row(i)).histogram;
      Index best = 0;
      for (Index c = 1; c < hist.size(); ++c) {
        if (hist[c] > hist[best]) best = c;
      }
      v(i, best) += 1.0;
    }
  }
  return v;
}

}  // namespace

std::vector<int> predict(const TrainedModel& model, const Matrix<double>& x) {
  if (x.rows() == 0) return {};
  check_shape(model, x);
  return std::visit(Overloaded{
                        [&](const NBModel& m) { return argmax_rows(nb::log_posterior(m, x)); },
                        // Raw margins: sigmoids saturate to equal values far from the boundary.
                        [&](const LinearModel& m) { return argmax_rows(margins(m, x)); },
                        [&](const ForestModel& m) { return argmax_rows(votes(m, model.n_classes, x)); },
                    },
                    model.model);
}

Matrix<double> predict_scores(const TrainedModel& model, const Matrix<double>& x) {
  if (x.rows() == 0) return Matrix<double>(0, model.n_classes);
  check_shape(model, x);
  return std::visit(Overloaded{
                        [&](const NBModel& m) { return nb::log_posterior(m, x); },
                        [&](const LinearModel& m) -> Matrix<double> {
                          Matrix<double> s = margins(m, x);
                          if (m.loss == LinearLoss::Logistic) {
                            s = s.unaryExpr([](double z) {
                              return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
                            });
                          }
                          return s;
                        },
                        [&](const ForestModel& m) -> Matrix<double> {
                          return votes(m, model.n_classes, x) / static_cast<double>(m.trees.size());
                        },
                    },
                    model.model);
}

}  // namespace bos
