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

#include "bos/corpus.hpp"

#include "bos/common.hpp"
#include "bos/csv.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_set>

namespace bos {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

constexpr std::array<std::string_view, 9> kColumns = {
    "id", "subject_id", "gender", "source", "utterance_no",
    "text", "audio_path", "binary_label", "multiclass_label"};

enum Column { kId, kSubject, kGender, kSource, kUttNo, kText, kAudio, kBinary, kMulti };

std::string row_tag(std::size_t row) { return "row " + std::to_string(row); }

}  // namespace

std::string_view to_string(Task task) {
  return task == Task::Binary ? "binary" : "multiclass";
}

Task parse_task(std::string_view s) {
  const auto v = lower_ascii(s);
  if (v == "binary") return Task::Binary;
  if (v == "multiclass") return Task::Multiclass;
  throw Error(ErrorKind::InvalidArgument, "unknown task '" + std::string(s) + "'");
}

LabelScheme::LabelScheme(Task kind, std::vector<std::string> labels)
    : kind_(kind), labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "label scheme has no labels");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty() || !seen.insert(l).second) {
      throw Error(ErrorKind::InvalidArgument, "label codes must be non-empty and unique");
    }
  }
}

LabelScheme LabelScheme::binary() { return LabelScheme(Task::Binary, {"H", "N"}); }

LabelScheme LabelScheme::multiclass(std::vector<std::string> labels) {
  return LabelScheme(Task::Multiclass, std::move(labels));
}

std::optional<int> LabelScheme::index_of(std::string_view code) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == code) return static_cast<int>(i);
  }
  return std::nullopt;
}

int LabelScheme::require_index(std::string_view code) const {
  if (auto i = index_of(code)) return *i;
  throw Error(ErrorKind::UnknownLabel, "unknown label '" + std::string(code) + "'");
}

Language Language::parse(std::string_view s) {
  const auto v = lower_ascii(s);
  if (v == "malayalam") return malayalam();
  if (v == "tamil") return tamil();
  if (v == "telugu") return telugu();
  return {Kind::Other, v};
}

std::vector<Language> Language::rubric() { return {malayalam(), tamil(), telugu()}; }

std::string Language::display_name() const {
  if (name.empty()) return "Other";
  std::string out = name;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::optional<std::string> Dataset::label_of(const Utterance& u) const {
  return scheme.kind() == Task::Binary ? u.binary_label : u.multiclass_label;
}

std::vector<int> Dataset::label_indices() const {
  std::vector<int> out;
  out.reserve(utterances.size());
  for (const auto& u : utterances) {
    const auto label = label_of(u);
    if (!label) {
      throw Error(ErrorKind::UnlabeledUtterance, "utterance '" + u.id + "' has no " +
                                                     std::string(to_string(scheme.kind())) +
                                                     " label");
    }
    out.push_back(scheme.require_index(*label));
  }
  return out;
}

bool Dataset::fully_labeled() const {
  return std::all_of(utterances.begin(), utterances.end(),
                     [&](const Utterance& u) { return label_of(u).has_value(); });
}

Dataset parse_manifest(std::string_view csv_text, const LabelScheme& scheme,
                       const std::filesystem::path& base_dir, Language language) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) {
    throw Error(ErrorKind::MissingColumn, "manifest has no header row");
  }

  std::array<std::size_t, kColumns.size()> pos{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    const auto& header = rows[0];
    auto it = std::find(header.begin(), header.end(), kColumns[c]);
    if (it == header.end()) {
      throw Error(ErrorKind::MissingColumn,
                  "manifest is missing column '" + std::string(kColumns[c]) + "'");
    }
    pos[c] = static_cast<std::size_t>(it - header.begin());
  }

  const auto binary = LabelScheme::binary();
  Dataset ds{{}, scheme, std::move(language)};
  std::unordered_set<std::string> ids;

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto field = [&](Column c) -> const std::string& {
      static const std::string empty;
      return pos[c] < row.size() ? row[pos[c]] : empty;
    };

    Utterance u;
    u.id = field(kId);
    if (u.id.empty()) {
      throw Error(ErrorKind::InvalidArgument, row_tag(r) + ": empty id");
    }
    if (!ids.insert(u.id).second) {
      throw Error(ErrorKind::DuplicateId, row_tag(r) + ": duplicate id '" + u.id + "'");
    }
    u.subject_id = field(kSubject);

    if (const auto& g = field(kGender); !g.empty()) {
      const auto v = lower_ascii(g);
      if (v == "m") {
        u.gender = Gender::M;
      } else if (v == "f") {
        u.gender = Gender::F;
      } else {
        throw Error(ErrorKind::InvalidArgument, row_tag(r) + ": gender must be M or F");
      }
    }
    u.source = field(kSource);

    if (const auto& n = field(kUttNo); !n.empty()) {
      const auto [ptr, ec] = std::from_chars(n.data(), n.data() + n.size(), u.utterance_no);
      if (ec != std::errc() || ptr != n.data() + n.size() || u.utterance_no < 0) {
        throw Error(ErrorKind::InvalidArgument,
                    row_tag(r) + ": utterance_no must be a non-negative integer");
      }
    }

    u.text = field(kText);
    if (const auto& a = field(kAudio); !a.empty()) {
      std::filesystem::path p(a);
      u.audio_path = (p.is_relative() && !base_dir.empty() ? base_dir / p : p).string();
    }
    if (!u.has_text() && !u.has_audio()) {
      throw Error(ErrorKind::MissingInput, row_tag(r) + ": neither text nor audio_path present");
    }

    if (const auto& b = field(kBinary); !b.empty()) {
      if (!binary.index_of(b)) {
        throw Error(ErrorKind::UnknownLabel,
                    row_tag(r) + ": unknown label '" + b + "' in binary_label");
      }
      u.binary_label = b;
    }
    if (const auto& m = field(kMulti); !m.empty()) {
      if (scheme.kind() == Task::Multiclass && !scheme.index_of(m)) {
        throw Error(ErrorKind::UnknownLabel,
                    row_tag(r) + ": unknown label '" + m + "' in multiclass_label");
      }
      u.multiclass_label = m;
    }
    if (u.binary_label && u.multiclass_label &&
        ((*u.multiclass_label == "N") != (*u.binary_label == "N"))) {
      throw Error(ErrorKind::InconsistentLabels,
                  row_tag(r) + ": multiclass label '" + *u.multiclass_label +
                      "' disagrees with binary label '" + *u.binary_label + "'");
    }
    ds.utterances.push_back(std::move(u));
  }
  return ds;
}

Dataset load_manifest(const std::filesystem::path& path, const LabelScheme& scheme,
                      Language language) {
  const auto text = csv::read_file(path);
  return parse_manifest(text, scheme, path.parent_path(), std::move(language));
}

std::string format_manifest(const std::vector<Utterance>& utterances) {
  std::string out(kManifestHeader);
  out += '\n';
  for (const auto& u : utterances) {
    std::string gender;
    if (u.gender) gender = *u.gender == Gender::M ? "M" : "F";
    out += csv::format_row({u.id, u.subject_id, gender, u.source,
                            std::to_string(u.utterance_no), u.text, u.audio_path,
                            u.binary_label.value_or(""), u.multiclass_label.value_or("")});
  }
  return out;
}

std::map<std::string, std::size_t> class_distribution(const Dataset& ds) {
  std::map<std::string, std::size_t> counts;
  for (const auto& l : ds.scheme.labels()) counts[l] = 0;
  for (int idx : ds.label_indices()) ++counts[ds.scheme.label(idx)];
  return counts;
}

std::size_t train_share(std::size_t n, double fraction) {
  const double exact = static_cast<double>(n) * fraction;
  return static_cast<std::size_t>(std::floor(exact + 1e-9));
}

Split stratified_split(const Dataset& ds, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "train_fraction must lie in (0, 1)");
  }

  Split out{{{}, ds.scheme, ds.language}, {{}, ds.scheme, ds.language}, {}};
  std::vector<char> to_train(ds.utterances.size(), 0);

  auto assign = [&](std::vector<std::size_t> members, std::uint64_t stream) {
    Rng rng(derive_seed(spec.seed, stream));
    shuffle(members.begin(), members.end(), rng);
    const auto k = train_share(members.size(), spec.train_fraction);
    for (std::size_t i = 0; i < k; ++i) to_train[members[i]] = 1;
  };

  if (spec.stratified) {
    const auto labels = ds.label_indices();
    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(ds.scheme.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      members[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    for (int c = 0; c < ds.scheme.size(); ++c) {
      const auto& code = ds.scheme.label(c);
      if (members[static_cast<std::size_t>(c)].empty()) {
        out.warnings.push_back("EmptyClass: label '" + code + "' has no members");
        continue;
      }
      assign(std::move(members[static_cast<std::size_t>(c)]), fnv1a64(code));
    }
  } else {
    std::vector<std::size_t> all(ds.utterances.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    assign(std::move(all), fnv1a64(""));
  }

  for (std::size_t i = 0; i < ds.utterances.size(); ++i) {
    (to_train[i] ? out.train : out.validation).utterances.push_back(ds.utterances[i]);
  }
  return out;
}

}  // namespace bos
