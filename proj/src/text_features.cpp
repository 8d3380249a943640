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

#include "bos/text_features.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace bos {

namespace {

constexpr UChar32 kZwnj = 0x200C;
constexpr UChar32 kZwj = 0x200D;

bool is_word_char(UChar32 c) {
  return (U_GET_GC_MASK(c) & (U_GC_L_MASK | U_GC_M_MASK | U_GC_ND_MASK)) != 0;
}

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

// Calls fn(code_point) for each folded code point of `utf8`.
template <typename Fn>
void for_each_folded(std::string_view utf8, Fn&& fn) {
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    fn(c < 0 ? UChar32{0xFFFD} : u_foldCase(c, U_FOLD_CASE_DEFAULT));
  }
}

}  // namespace

std::string case_fold(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for_each_folded(utf8, [&](UChar32 c) { append_utf8(out, c); });
  return out;
}

Tokens tokenize(std::string_view utf8) {
  Tokens tokens;
  std::string current;
  std::size_t code_points = 0;
  std::size_t trailing_joiners = 0;
  std::size_t joiner_bytes = 0;

  auto flush = [&] {
    if (trailing_joiners) {
      current.resize(current.size() - joiner_bytes);
      code_points -= trailing_joiners;
    }
    if (code_points >= 2) tokens.push_back(current);
    current.clear();
    code_points = trailing_joiners = joiner_bytes = 0;
  };

  for_each_folded(utf8, [&](UChar32 c) {
    if (is_word_char(c)) {
      append_utf8(current, c);
      ++code_points;
      trailing_joiners = joiner_bytes = 0;
    } else if ((c == kZwj || c == kZwnj) && code_points > 0) {
      append_utf8(current, c);
      ++code_points;
      ++trailing_joiners;
      joiner_bytes += U8_LENGTH(c);
    } else {
      flush();
    }
  });
  flush();
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  terms_ = std::move(terms);
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], static_cast<Index>(i));
}

std::optional<Index> Vocabulary::index_of(std::string_view term) const {
  if (auto it = index_.find(term); it != index_.end()) return it->second;
  return std::nullopt;
}

Vocabulary fit_vocabulary(const std::vector<Tokens>& docs) {
  std::set<std::string> seen;
  for (const auto& doc : docs) seen.insert(doc.begin(), doc.end());
  return Vocabulary(std::vector<std::string>(seen.begin(), seen.end()));
}

CountMatrix count_transform(const std::vector<Tokens>& docs, const Vocabulary& vocab) {
  std::vector<Eigen::Triplet<std::int64_t, Index>> triplets;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& tok : docs[d]) {
      if (auto col = vocab.index_of(tok)) triplets.emplace_back(static_cast<Index>(d), *col, 1);
    }
  }
  CountMatrix counts(static_cast<Index>(docs.size()), static_cast<Index>(vocab.size()));
  counts.setFromTriplets(triplets.begin(), triplets.end());  // duplicates are summed
  return counts;
}

TfidfModel fit_tfidf(const CountMatrix& counts, Vocabulary vocab) {
  if (counts.rows() == 0) throw Error(ErrorKind::EmptyCorpus, "cannot fit idf on zero documents");
  if (counts.cols() != static_cast<Index>(vocab.size())) {
    throw Error(ErrorKind::ShapeMismatch, "count matrix width differs from vocabulary size");
  }
  Vector<double> df = Vector<double>::Zero(counts.cols());
  for (Index r = 0; r < counts.outerSize(); ++r) {
    for (CountMatrix::InnerIterator it(counts, r); it; ++it) {
      if (it.value() > 0) df[it.col()] += 1.0;
    }
  }
  const double n = static_cast<double>(counts.rows());
  TfidfModel model{std::move(vocab), Vector<double>(counts.cols())};
  for (Index t = 0; t < counts.cols(); ++t) {
    model.idf[t] = std::log((1.0 + n) / (1.0 + df[t])) + 1.0;
  }
  return model;
}

FeatureMatrix tfidf_transform(const CountMatrix& counts, const TfidfModel& model) {
  if (counts.cols() != model.idf.size()) {
    throw Error(ErrorKind::ShapeMismatch, "count matrix width differs from the fitted vocabulary");
  }
  FeatureMatrix out{Matrix<double>::Zero(counts.rows(), counts.cols()), Provenance::Text};
  for (Index r = 0; r < counts.outerSize(); ++r) {
    for (CountMatrix::InnerIterator it(counts, r); it; ++it) {
      out.values(r, it.col()) = static_cast<double>(it.value()) * model.idf[it.col()];
    }
    const double norm = out.values.row(r).norm();
    if (norm > 0.0) out.values.row(r) /= norm;
  }
  return out;
}

}  // namespace bos
