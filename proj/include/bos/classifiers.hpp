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

// Multinomial naive Bayes, one-vs-rest linear SVM and logistic regression,
// and a Gini random forest behind one train/predict contract.
//
// Labels are class indices in [0, n_classes). Every argmax breaks ties
// toward the lowest index.

#pragma once

#include "bos/common.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bos {

enum class Method { NB, SVM, LR, RF };

std::string_view to_string(Method method);
Method parse_method(std::string_view s);
inline constexpr Method kAllMethods[] = {Method::NB, Method::SVM, Method::LR, Method::RF};

struct TrainConfig {
  Method method = Method::LR;
  std::uint64_t seed = 0;
  double nb_alpha = 1.0;
  double l2_lambda = 1e-4;
  int max_epochs = 200;
  double learning_rate = 0.1;  // step at epoch t is learning_rate / (1 + t)
  double tolerance = 1e-6;     // stop when |objective change| falls below this
  int rf_trees = 100;
  std::optional<int> rf_max_depth;           // unlimited when empty
  std::optional<int> rf_features_per_split;  // floor(sqrt(n_features)) when empty
  bool rf_bootstrap = true;
};

struct NBModel {
  Vector<double> class_log_prior;  // ln(n_c / n)
  Matrix<double> feature_log_prob;  // classes x features
};

enum class LinearLoss { Hinge, Logistic };

struct LinearModel {
  Matrix<double> weights;  // classes x features, one-vs-rest rows
  Vector<double> bias;
  LinearLoss loss = LinearLoss::Logistic;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // x[feature] <= threshold goes left
  int left = -1;
  int right = -1;
  Vector<double> histogram;  // class counts of the samples reaching this node

  bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  template <typename Row>
  const TreeNode& leaf_for(const Row& x) const {
    const TreeNode* node = &nodes.front();
    while (!node->is_leaf()) {
      node = &nodes[static_cast<std::size_t>(x[node->feature] <= node->threshold ? node->left : node->right)];
    }
    return *node;
  }
};

struct ForestModel {
  std::vector<DecisionTree> trees;
};

struct TrainedModel {
  std::variant<NBModel, LinearModel, ForestModel> model;
  int n_classes = 0;
  Index n_features = 0;

  Method method() const;
};

// Throws ShapeMismatch, NonFiniteFeature, NegativeFeature (NB), and
// InvalidArgument for bad labels or configuration. A training set with a
// single class yields a model that predicts that class everywhere and appends
// a warning. `threads` = 0 uses worker_count(); results do not depend on it.
TrainedModel train(const Matrix<double>& x, std::span<const int> y, int n_classes,
                   const TrainConfig& cfg, std::vector<std::string>* warnings = nullptr,
                   std::size_t threads = 0);

std::vector<int> predict(const TrainedModel& model, const Matrix<double>& x);

// NB: normalized log posteriors. LR: per-class sigmoid. SVM: raw margins.
// RF: vote fractions.
Matrix<double> predict_scores(const TrainedModel& model, const Matrix<double>& x);

// Row-wise argmax, lowest index on ties.
std::vector<int> argmax_rows(const Matrix<double>& scores);

namespace nb {

NBModel fit(const Matrix<double>& x, std::span<const int> y, int n_classes, double alpha);
Matrix<double> log_posterior(const NBModel& m, const Matrix<double>& x);

}  // namespace nb

namespace linear {

// Objective and (sub)gradient of one binary one-vs-rest problem with targets
// in {-1, +1}:
//   logistic: (1/n) sum log(1 + exp(-t s)) + lambda |w|^2
//   hinge:    (1/n) sum max(0, 1 - t s)    + lambda |w|^2
// with s = x.w + b. The bias is not penalized.
struct Gradient {
  Vector<double> w;
  double b = 0.0;
};

double objective(LinearLoss loss, const Vector<double>& w, double b, const Matrix<double>& x,
                 const Vector<double>& targets, double lambda);
Gradient gradient(LinearLoss loss, const Vector<double>& w, double b, const Matrix<double>& x,
                  const Vector<double>& targets, double lambda);

struct BinaryFit {
  Vector<double> w;
  double b = 0.0;
  int epochs = 0;
  double objective = 0.0;
};

// Full-batch (sub)gradient descent from zero with step lr / (1 + t).
BinaryFit fit_binary(LinearLoss loss, const Matrix<double>& x, const Vector<double>& targets,
                     const TrainConfig& cfg);

LinearModel fit(LinearLoss loss, const Matrix<double>& x, std::span<const int> y, int n_classes,
                const TrainConfig& cfg, std::size_t threads);

}  // namespace linear

namespace forest {

int features_per_split(const TrainConfig& cfg, Index n_features);

// Row indices drawn with replacement for tree `tree_index`.
std::vector<Index> bootstrap_rows(Index n, std::uint64_t seed, std::size_t tree_index);

DecisionTree grow_tree(const Matrix<double>& x, std::span<const int> y, int n_classes,
                       std::vector<Index> rows, const TrainConfig& cfg, std::uint64_t tree_seed);

ForestModel fit(const Matrix<double>& x, std::span<const int> y, int n_classes,
                const TrainConfig& cfg, std::size_t threads);

// Weighted child impurity (n_l gini_l + n_r gini_r) / n of a candidate split.
double split_impurity(const Matrix<double>& x, std::span<const int> y, int n_classes,
                      std::span<const Index> rows, Index feature, double threshold);

double gini(const Vector<double>& histogram);

}  // namespace forest

}  // namespace bos
