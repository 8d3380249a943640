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

#include "bos/classifiers.hpp"
#include "bos/common.hpp"
#include "bos/corpus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bos {

struct ConfusionMatrix {
  LabelScheme scheme;
  Matrix<std::int64_t> counts;  // rows = truth, cols = prediction

  std::int64_t total() const { return counts.sum(); }
};

// Throws LengthMismatch, UnknownLabel.
ConfusionMatrix confusion(std::span<const std::string> y_true, std::span<const std::string> y_pred,
                          const LabelScheme& scheme);
ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred,
                          const LabelScheme& scheme);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;
};

struct ClassificationReport {
  LabelScheme scheme;
  std::vector<ClassMetrics> per_class;  // scheme order
  double macro_f1 = 0.0;

  const ClassMetrics& at(std::string_view label) const;
};

// 0/0 counts as 0 for precision, recall and F1; the macro mean runs over every
// scheme label, including classes with no support.
ClassificationReport report(const ConfusionMatrix& cm);

// label,precision,recall,f1,support rows in scheme order, then a
// "macro" row carrying macro F1 and total support. Values use 17
// significant digits so a parse reproduces them exactly.
std::string report_to_csv(const ClassificationReport& r);
ClassificationReport report_from_csv(std::string_view csv_text, const LabelScheme& scheme);

// Aligned table with two decimals.
std::string report_to_text(const ClassificationReport& r, std::string_view title = {});

enum class Modality { Text, Speech };

std::string_view to_string(Modality m);
Modality parse_modality(std::string_view s);
inline constexpr Modality kAllModalities[] = {Modality::Text, Modality::Speech};

struct SweepKey {
  std::string language;  // lower-case rubric name
  Task task = Task::Binary;
  Modality modality = Modality::Text;
  Method method = Method::NB;

  auto operator<=>(const SweepKey&) const = default;
};

// Column order follows the published grids: methods nb, svm, lr, rf, each
// split into text and speech.
inline constexpr int kGridColumns = 8;
int grid_column(Method method, Modality modality);

struct SweepCell {
  std::optional<double> macro_f1;
  std::string failure;  // set when the cell was attempted and failed
  bool best = false;
};

struct SweepGrid {
  Task task = Task::Binary;
  std::vector<std::string> languages;             // rubric rows
  std::vector<std::vector<SweepCell>> cells;      // [row][grid_column]
};

struct SweepSummary {
  SweepGrid binary;
  SweepGrid multiclass;
  std::size_t present = 0;
  std::vector<SweepKey> missing;  // rubric cells with no report
};

// 2 tasks x 3 languages x 2 modalities x 4 methods.
std::vector<SweepKey> sweep_rubric();

SweepSummary sweep_summary(const std::map<SweepKey, ClassificationReport>& reports,
                           const std::map<SweepKey, std::string>& failures = {});

// Grid as an aligned table; the best cell in each row carries a '*' and the
// trailing "best" column names it.
std::string grid_to_text(const SweepGrid& grid);
std::string grid_to_csv(const SweepGrid& grid);

// Per-class F1 for one language and task: class rows x method/modality
// columns, two decimals.
std::string per_class_table(const std::map<SweepKey, ClassificationReport>& reports,
                            std::string_view language, Task task, const LabelScheme& scheme);

}  // namespace bos
