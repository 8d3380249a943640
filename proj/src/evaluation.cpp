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

#include "bos/evaluation.hpp"

#include "bos/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace bos {

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, "report csv: bad number '" + s + "'");
  }
  return v;
}

std::string display_language(const std::string& name) { return Language::parse(name).display_name(); }

}  // namespace

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred,
                          const LabelScheme& scheme) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorKind::LengthMismatch, "truth has " + std::to_string(y_true.size()) +
                                               " labels, predictions " + std::to_string(y_pred.size()));
  }
  const int k = scheme.size();
  ConfusionMatrix cm{scheme, Matrix<std::int64_t>::Zero(k, k)};
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] < 0 || y_true[i] >= k || y_pred[i] < 0 || y_pred[i] >= k) {
      throw Error(ErrorKind::UnknownLabel, "label index outside the scheme");
    }
    ++cm.counts(y_true[i], y_pred[i]);
  }
  return cm;
}

ConfusionMatrix confusion(std::span<const std::string> y_true, std::span<const std::string> y_pred,
                          const LabelScheme& scheme) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorKind::LengthMismatch, "truth has " + std::to_string(y_true.size()) +
                                               " labels, predictions " + std::to_string(y_pred.size()));
  }
  std::vector<int> t;
  std::vector<int> p;
  t.reserve(y_true.size());
  p.reserve(y_pred.size());
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    t.push_back(scheme.require_index(y_true[i]));
    p.push_back(scheme.require_index(y_pred[i]));
  }
  return confusion(std::span<const int>(t), std::span<const int>(p), scheme);
}

const ClassMetrics& ClassificationReport::at(std::string_view label) const {
  return per_class.at(static_cast<std::size_t>(scheme.require_index(label)));
}

ClassificationReport report(const ConfusionMatrix& cm) {
  ClassificationReport r{cm.scheme, {}, 0.0};
  const Matrix<double> c = cm.counts.cast<double>();
  const Vector<double> predicted = c.colwise().sum().transpose();
  const Vector<double> actual = c.rowwise().sum();
  double f1_sum = 0.0;
  for (Index k = 0; k < c.rows(); ++k) {
    ClassMetrics m;
    const double tp = c(k, k);
    m.precision = safe_ratio(tp, predicted[k]);
    m.recall = safe_ratio(tp, actual[k]);
    m.f1 = safe_ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    m.support = cm.counts.row(k).sum();
    f1_sum += m.f1;
    r.per_class.push_back(m);
  }
  r.macro_f1 = c.rows() ? f1_sum / static_cast<double>(c.rows()) : 0.0;
  return r;
}

std::string report_to_csv(const ClassificationReport& r) {
  std::string out = csv::format_row({"label", "precision", "recall", "f1", "support"});
  std::int64_t total = 0;
  for (int k = 0; k < r.scheme.size(); ++k) {
    const auto& m = r.per_class[static_cast<std::size_t>(k)];
    total += m.support;
    out += csv::format_row({r.scheme.label(k), exact(m.precision), exact(m.recall), exact(m.f1),
                            std::to_string(m.support)});
  }
  out += csv::format_row({"macro", "", "", exact(r.macro_f1), std::to_string(total)});
  return out;
}

ClassificationReport report_from_csv(std::string_view csv_text, const LabelScheme& scheme) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty() || rows[0] != csv::Row{"label", "precision", "recall", "f1", "support"}) {
    throw Error(ErrorKind::MissingColumn, "report csv: unexpected header");
  }
  ClassificationReport r{scheme, std::vector<ClassMetrics>(static_cast<std::size_t>(scheme.size())), 0.0};
  std::vector<bool> seen(static_cast<std::size_t>(scheme.size()), false);
  bool macro = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 5) throw Error(ErrorKind::InvalidArgument, "report csv: ragged row");
    if (row[0] == "macro") {
      r.macro_f1 = parse_double(row[3]);
      macro = true;
      continue;
    }
    const auto k = static_cast<std::size_t>(scheme.require_index(row[0]));
    r.per_class[k] = {parse_double(row[1]), parse_double(row[2]), parse_double(row[3]),
                      static_cast<std::int64_t>(parse_double(row[4]))};
    seen[k] = true;
  }
  if (!macro || std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::InvalidArgument, "report csv: missing class or macro rows");
  }
  return r;
}

std::string report_to_text(const ClassificationReport& r, std::string_view title) {
  std::string out;
  if (!title.empty()) out += std::string(title) + "\n";
  out += "Class Label  precision  recall  f1     support\n";
  std::int64_t total = 0;
  for (int k = 0; k < r.scheme.size(); ++k) {
    const auto& m = r.per_class[static_cast<std::size_t>(k)];
    total += m.support;
    out += pad_right(r.scheme.label(k), 13) + pad_right(fixed2(m.precision), 11) +
           pad_right(fixed2(m.recall), 8) + pad_right(fixed2(m.f1), 7) + std::to_string(m.support) + "\n";
  }
  out += pad_right("macro", 13) + pad_right("", 11) + pad_right("", 8) + pad_right(fixed2(r.macro_f1), 7) +
         std::to_string(total) + "\n";
  return out;
}

std::string_view to_string(Modality m) { return m == Modality::Text ? "text" : "speech"; }

Modality parse_modality(std::string_view s) {
  const auto v = lower(s);
  if (v == "text") return Modality::Text;
  if (v == "speech" || v == "audio") return Modality::Speech;
  throw Error(ErrorKind::InvalidArgument, "unknown modality '" + std::string(s) + "' (text, speech)");
}

int grid_column(Method method, Modality modality) {
  return static_cast<int>(method) * 2 + (modality == Modality::Speech ? 1 : 0);
}

std::vector<SweepKey> sweep_rubric() {
  std::vector<SweepKey> keys;
  for (Task task : {Task::Binary, Task::Multiclass}) {
    for (const auto& lang : Language::rubric()) {
      for (Method method : kAllMethods) {
        for (Modality modality : kAllModalities) keys.push_back({lang.name, task, modality, method});
      }
    }
  }
  return keys;
}

SweepSummary sweep_summary(const std::map<SweepKey, ClassificationReport>& reports,
                           const std::map<SweepKey, std::string>& failures) {
  SweepSummary s;
  for (Task task : {Task::Binary, Task::Multiclass}) {
    SweepGrid& grid = task == Task::Binary ? s.binary : s.multiclass;
    grid.task = task;
    for (const auto& lang : Language::rubric()) {
      grid.languages.push_back(lang.name);
      grid.cells.emplace_back(kGridColumns);
    }
  }

  for (const auto& key : sweep_rubric()) {
    SweepGrid& grid = key.task == Task::Binary ? s.binary : s.multiclass;
    const auto row = static_cast<std::size_t>(
        std::find(grid.languages.begin(), grid.languages.end(), key.language) - grid.languages.begin());
    auto& cell = grid.cells[row][static_cast<std::size_t>(grid_column(key.method, key.modality))];
    if (auto it = reports.find(key); it != reports.end()) {
      cell.macro_f1 = it->second.macro_f1;
      ++s.present;
    } else {
      if (auto f = failures.find(key); f != failures.end()) cell.failure = f->second;
      s.missing.push_back(key);
    }
  }

  for (SweepGrid* grid : {&s.binary, &s.multiclass}) {
    for (auto& row : grid->cells) {
      std::optional<double> top;
      for (const auto& c : row) {
        if (c.macro_f1 && (!top || *c.macro_f1 > *top)) top = c.macro_f1;
      }
      for (auto& c : row) c.best = top && c.macro_f1 && *c.macro_f1 == *top;
    }
  }
  return s;
}

namespace {

std::string column_name(int col) {
  return std::string(to_string(kAllMethods[col / 2])) + "/" +
         std::string(to_string(kAllModalities[col % 2]));
}

std::string grid_header() {
  std::string out = pad_right("", 12);
  for (Method m : kAllMethods) out += pad_right(std::string(to_string(m)), 16);
  out += "\n" + pad_right("", 12);
  for (int c = 0; c < kGridColumns; ++c) out += pad_right(std::string(to_string(kAllModalities[c % 2])), 8);
  return out;
}

}  // namespace

std::string grid_to_text(const SweepGrid& grid) {
  std::string out = "Macro average F1 on validation data (" + std::string(to_string(grid.task)) + ")\n";
  out += grid_header() + "best\n";
  for (std::size_t r = 0; r < grid.languages.size(); ++r) {
    out += pad_right(display_language(grid.languages[r]), 12);
    std::string best;
    for (int c = 0; c < kGridColumns; ++c) {
      const auto& cell = grid.cells[r][static_cast<std::size_t>(c)];
      std::string text = cell.macro_f1 ? fixed2(*cell.macro_f1) : (cell.failure.empty() ? "--" : "ERR");
      if (cell.best) {
        text += "*";
        best += (best.empty() ? "" : " ") + column_name(c);
      }
      out += pad_right(text, 8);
    }
    out += (best.empty() ? "-" : best) + "\n";
  }
  return out;
}

std::string grid_to_csv(const SweepGrid& grid) {
  csv::Row header{"language"};
  for (int c = 0; c < kGridColumns; ++c) {
    header.push_back(std::string(to_string(kAllMethods[c / 2])) + "_" +
                     std::string(to_string(kAllModalities[c % 2])));
  }
  header.push_back("best");
  std::string out = csv::format_row(header);
  for (std::size_t r = 0; r < grid.languages.size(); ++r) {
    csv::Row row{grid.languages[r]};
    std::string best;
    for (int c = 0; c < kGridColumns; ++c) {
      const auto& cell = grid.cells[r][static_cast<std::size_t>(c)];
      row.push_back(cell.macro_f1 ? exact(*cell.macro_f1) : (cell.failure.empty() ? "" : "ERR"));
      if (cell.best) best += (best.empty() ? "" : " ") + column_name(c);
    }
    row.push_back(best);
    out += csv::format_row(row);
  }
  return out;
}

std::string per_class_table(const std::map<SweepKey, ClassificationReport>& reports,
                            std::string_view language, Task task, const LabelScheme& scheme) {
  std::string out = "F1 per class (" + std::string(to_string(task)) + ") in " +
                    display_language(std::string(language)) + "\n";
  out += grid_header() + "\n";
  for (int k = 0; k < scheme.size(); ++k) {
    out += pad_right(scheme.label(k), 12);
    for (int c = 0; c < kGridColumns; ++c) {
      const SweepKey key{std::string(language), task, kAllModalities[c % 2], kAllMethods[c / 2]};
      const auto it = reports.find(key);
      out += pad_right(it == reports.end() ? "--" : fixed2(it->second.per_class[static_cast<std::size_t>(k)].f1), 8);
    }
    out += "\n";
  }
  return out;
}

}  // namespace bos
