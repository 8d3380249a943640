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
#include <cmath>
#include <numeric>
#include <utility>

namespace bos::forest {

namespace {

struct Candidate {
  Index feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

Vector<double> histogram_of(std::span<const int> y, int n_classes, std::span<const Index> rows) {
  Vector<double> h = Vector<double>::Zero(n_classes);
  for (Index r : rows) h[y[static_cast<std::size_t>(r)]] += 1.0;
  return h;
}

// n * gini for a histogram with total n, i.e. n - sum(c^2) / n.
double scaled_gini(const Vector<double>& h, double n) {
  return n > 0.0 ? n - h.squaredNorm() / n : 0.0;
}

double midpoint(double a, double b) {
  const double mid = a + (b - a) / 2.0;
  return mid < b ? mid : a;
}

class SplitFinder {
 public:
  SplitFinder(const Matrix<double>& x, std::span<const int> y, int n_classes, int mtry, Rng& rng)
      : x_(x), y_(y), n_classes_(n_classes), mtry_(mtry), rng_(rng),
        order_(static_cast<std::size_t>(x.cols())) {
    std::iota(order_.begin(), order_.end(), Index{0});
  }

  // Examines features in random order until mtry non-constant ones have been
  // scored; features constant on `rows` do not count toward mtry.
  std::optional<Candidate> best(std::span<const Index> rows) {
    std::optional<Candidate> best;
    const auto n_features = order_.size();
    int scored = 0;
    for (std::size_t k = 0; k < n_features && scored < mtry_; ++k) {
      const auto j = k + static_cast<std::size_t>(uniform_index(rng_, n_features - k));
      std::swap(order_[k], order_[j]);
      if (auto c = best_for_feature(order_[k], rows)) {
        ++scored;
        if (!best || c->impurity < best->impurity) best = c;
      }
    }
    return best;
  }

 private:
  std::optional<Candidate> best_for_feature(Index feature, std::span<const Index> rows) {
    values_.clear();
    for (Index r : rows) values_.emplace_back(x_(r, feature), y_[static_cast<std::size_t>(r)]);
    std::sort(values_.begin(), values_.end());
    if (values_.front().first == values_.back().first) return std::nullopt;

    const double n = static_cast<double>(values_.size());
    Vector<double> left = Vector<double>::Zero(n_classes_);
    Vector<double> right = Vector<double>::Zero(n_classes_);
    for (const auto& v : values_) right[v.second] += 1.0;

    std::optional<Candidate> best;
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
      left[values_[i].second] += 1.0;
      right[values_[i].second] -= 1.0;
      if (values_[i].first == values_[i + 1].first) continue;
      const double n_left = static_cast<double>(i + 1);
      const double impurity = (scaled_gini(left, n_left) + scaled_gini(right, n - n_left)) / n;
      if (!best || impurity < best->impurity) {
        best = Candidate{feature, midpoint(values_[i].first, values_[i + 1].first), impurity};
      }
    }
    return best;
  }

  const Matrix<double>& x_;
  std::span<const int> y_;
  int n_classes_;
  int mtry_;
  Rng& rng_;
  std::vector<Index> order_;
  std::vector<std::pair<double, int>> values_;
};

}  // namespace

double gini(const Vector<double>& histogram) {
  const double n = histogram.sum();
  return n > 0.0 ? scaled_gini(histogram, n) / n : 0.0;
}

double split_impurity(const Matrix<double>& x, std::span<const int> y, int n_classes,
                      std::span<const Index> rows, Index feature, double threshold) {
  Vector<double> left = Vector<double>::Zero(n_classes);
  Vector<double> right = Vector<double>::Zero(n_classes);
  for (Index r : rows) {
    (x(r, feature) <= threshold ? left : right)[y[static_cast<std::size_t>(r)]] += 1.0;
  }
  const double n = static_cast<double>(rows.size());
  return (scaled_gini(left, left.sum()) + scaled_gini(right, right.sum())) / n;
}

int features_per_split(const TrainConfig& cfg, Index n_features) {
  const auto fallback = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n_features))));
  const int k = cfg.rf_features_per_split.value_or(fallback);
  return std::clamp(k, 1, static_cast<int>(std::max<Index>(1, n_features)));
}

std::vector<Index> bootstrap_rows(Index n, std::uint64_t seed, std::size_t tree_index) {
  Rng rng(derive_seed(seed, 2 * static_cast<std::uint64_t>(tree_index)));
  std::vector<Index> rows(static_cast<std::size_t>(n));
  for (auto& r : rows) r = static_cast<Index>(uniform_index(rng, static_cast<std::uint64_t>(n)));
  return rows;
}

DecisionTree grow_tree(const Matrix<double>& x, std::span<const int> y, int n_classes,
                       std::vector<Index> rows, const TrainConfig& cfg, std::uint64_t tree_seed) {
  Rng rng(tree_seed);
  SplitFinder finder(x, y, n_classes, features_per_split(cfg, x.cols()), rng);

  struct Pending {
    int node;
    std::vector<Index> rows;
    int depth;
  };

  DecisionTree tree;
  tree.nodes.emplace_back();
  std::vector<Pending> stack;
  stack.push_back({0, std::move(rows), 0});

  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    auto& node = tree.nodes[static_cast<std::size_t>(p.node)];
    node.histogram = histogram_of(y, n_classes, p.rows);

    const bool pure = (node.histogram.array() > 0.0).count() <= 1;
    const bool depth_cap = cfg.rf_max_depth && p.depth >= *cfg.rf_max_depth;
    if (pure || depth_cap || p.rows.size() < 2) continue;

    const auto split = finder.best(p.rows);
    if (!split) continue;

    std::vector<Index> left_rows;
    std::vector<Index> right_rows;
    for (Index r : p.rows) {
      (x(r, split->feature) <= split->threshold ? left_rows : right_rows).push_back(r);
    }
    const int left = static_cast<int>(tree.nodes.size());
    node.feature = static_cast<int>(split->feature);
    node.threshold = split->threshold;
    node.left = left;
    node.right = left + 1;
    tree.nodes.emplace_back();  // invalidates `node`
    tree.nodes.emplace_back();
    stack.push_back({left + 1, std::move(right_rows), p.depth + 1});
    stack.push_back({left, std::move(left_rows), p.depth + 1});
  }
  return tree;
}

ForestModel fit(const Matrix<double>& x, std::span<const int> y, int n_classes,
                const TrainConfig& cfg, std::size_t threads) {
  if (cfg.rf_trees < 1) throw Error(ErrorKind::InvalidArgument, "rf_trees must be >= 1");
  if (cfg.rf_max_depth && *cfg.rf_max_depth < 0) {
    throw Error(ErrorKind::InvalidArgument, "rf_max_depth must be >= 0");
  }
  ForestModel model;
  model.trees.resize(static_cast<std::size_t>(cfg.rf_trees));
  parallel_for(model.trees.size(), threads, [&](std::size_t t) {
    std::vector<Index> rows;
    if (cfg.rf_bootstrap) {
      rows = bootstrap_rows(x.rows(), cfg.seed, t);
    } else {
      rows.resize(static_cast<std::size_t>(x.rows()));
      std::iota(rows.begin(), rows.end(), Index{0});
    }
    model.trees[t] = grow_tree(x, y, n_classes, std::move(rows), cfg,
                               derive_seed(cfg.seed, 2 * static_cast<std::uint64_t>(t) + 1));
  });
  return model;
}

}  // namespace bos::forest
