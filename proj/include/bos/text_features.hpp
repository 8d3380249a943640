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

#pragma once

#include "bos/common.hpp"

#include <Eigen/SparseCore>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bos {

using Tokens = std::vector<std::string>;

// Simple (one-to-one) Unicode case folding of UTF-8 text. Ill-formed
// sequences become U+FFFD.
std::string case_fold(std::string_view utf8);

// Case-folded maximal runs of word characters (letters, combining marks,
// decimal digits, plus ZWJ/ZWNJ inside words) that are at least two code
// points long, in order of appearance.
Tokens tokenize(std::string_view utf8);

// Term -> column index; indices are dense and follow byte-wise (code point)
// lexicographic order of the terms.
class Vocabulary {
 public:
  Vocabulary() = default;
  // Terms need not be sorted or unique.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  std::optional<Index> index_of(std::string_view term) const;
  // Terms in column order.
  const std::vector<std::string>& terms() const { return terms_; }

  bool operator==(const Vocabulary& other) const { return terms_ == other.terms_; }

 private:
  std::map<std::string, Index, std::less<>> index_;
  std::vector<std::string> terms_;
};

Vocabulary fit_vocabulary(const std::vector<Tokens>& docs);

using CountMatrix = Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor, Index>;

// Out-of-vocabulary tokens are ignored.
CountMatrix count_transform(const std::vector<Tokens>& docs, const Vocabulary& vocab);

struct TfidfModel {
  Vocabulary vocabulary;
  Vector<double> idf;  // ln((1 + n_docs) / (1 + df)) + 1
};

// Throws EmptyCorpus when the matrix has no rows, ShapeMismatch when its
// width differs from the vocabulary.
TfidfModel fit_tfidf(const CountMatrix& counts, Vocabulary vocab);

// count * idf, each row scaled to unit L2 norm; zero rows stay zero.
FeatureMatrix tfidf_transform(const CountMatrix& counts, const TfidfModel& model);

}  // namespace bos
