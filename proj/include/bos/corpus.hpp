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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bos {

enum class Gender { M, F };

struct Utterance {
  std::string id;
  std::string subject_id;
  std::optional<Gender> gender;
  std::string source;
  std::int64_t utterance_no = 0;
  std::string text;        // empty when absent
  std::string audio_path;  // empty when absent; resolved against the manifest directory
  std::optional<std::string> binary_label;
  std::optional<std::string> multiclass_label;

  bool has_text() const { return !text.empty(); }
  bool has_audio() const { return !audio_path.empty(); }
};

// Binary and multiclass label schemes share one shape; the kind doubles as
// the task selector everywhere else in the pipeline.
enum class Task { Binary, Multiclass };

std::string_view to_string(Task task);
Task parse_task(std::string_view s);

class LabelScheme {
 public:
  LabelScheme() : LabelScheme(binary()) {}
  LabelScheme(Task kind, std::vector<std::string> labels);

  static LabelScheme binary();
  // Default codes follow the multiclass tables: C, N, P, R, G. Codes are
  // opaque; no meaning is attached to any of them except N (non-hate).
  static LabelScheme multiclass(std::vector<std::string> labels = {"C", "N", "P", "R", "G"});

  Task kind() const { return kind_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int index) const { return labels_.at(static_cast<std::size_t>(index)); }
  std::optional<int> index_of(std::string_view code) const;
  // Throws UnknownLabel.
  int require_index(std::string_view code) const;

  bool operator==(const LabelScheme&) const = default;

 private:
  Task kind_;
  std::vector<std::string> labels_;
};

struct Language {
  enum class Kind { Malayalam, Tamil, Telugu, Other };
  Kind kind = Kind::Other;
  std::string name;  // lower-case display name; free-form for Other

  static Language parse(std::string_view s);
  static Language malayalam() { return {Kind::Malayalam, "malayalam"}; }
  static Language tamil() { return {Kind::Tamil, "tamil"}; }
  static Language telugu() { return {Kind::Telugu, "telugu"}; }
  // The three rubric languages in table order.
  static std::vector<Language> rubric();

  std::string display_name() const;
  bool operator==(const Language&) const = default;
};

struct Dataset {
  std::vector<Utterance> utterances;
  LabelScheme scheme;
  Language language;

  // Label under `scheme`, or nullopt when the row carries none.
  std::optional<std::string> label_of(const Utterance& u) const;
  // Scheme indices of every label. Throws UnlabeledUtterance.
  std::vector<int> label_indices() const;
  bool fully_labeled() const;
};

struct SplitSpec {
  double train_fraction = 0.75;
  std::uint64_t seed = 0;
  bool stratified = true;
};

struct Split {
  Dataset train;
  Dataset validation;
  std::vector<std::string> warnings;  // e.g. scheme labels without members
};

inline constexpr std::string_view kManifestHeader =
    "id,subject_id,gender,source,utterance_no,text,audio_path,binary_label,multiclass_label";

Dataset load_manifest(const std::filesystem::path& path, const LabelScheme& scheme,
                      Language language = {});
Dataset parse_manifest(std::string_view csv_text, const LabelScheme& scheme,
                       const std::filesystem::path& base_dir = {}, Language language = {});
std::string format_manifest(const std::vector<Utterance>& utterances);

// Count per scheme label; every scheme label is a key. Throws UnlabeledUtterance.
std::map<std::string, std::size_t> class_distribution(const Dataset& ds);

// Per class of n members, floor(n * train_fraction) go to train and the rest
// to validation. Members are shuffled within their class by a generator seeded
// from spec.seed and the label code, so a class's draw does not depend on
// where it sits in the scheme. Both halves keep the original file order.
Split stratified_split(const Dataset& ds, const SplitSpec& spec);

// floor(n * fraction) with a guard against products like 0.29 * 100 landing
// a hair under an integer.
std::size_t train_share(std::size_t n, double fraction);

}  // namespace bos
