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

// Run configuration and the on-disk model bundle.
//
// A bundle is one JSON document. Every floating-point array is stored as a
// base64 block of little-endian float64 values in row-major order, so a
// save/load cycle reproduces each value bit for bit.

#pragma once

#include "bos/audio_features.hpp"
#include "bos/classifiers.hpp"
#include "bos/corpus.hpp"
#include "bos/evaluation.hpp"
#include "bos/text_features.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bos {

inline constexpr int kBundleFormatVersion = 1;

struct RunConfig {
  std::string manifest_path;
  std::map<std::string, std::string> manifests;  // language -> manifest, for sweeps
  Language language;
  Task task = Task::Binary;
  Modality modality = Modality::Text;
  Method method = Method::LR;
  std::vector<std::string> multiclass_labels{"C", "N", "P", "R", "G"};
  SplitSpec split;
  AudioConfig audio;
  TrainConfig train;
  std::string output_dir = "out";
  std::string cache_dir;  // optional spectrogram cache

  LabelScheme scheme() const;
  // Applies a seed to both the split and the learner.
  void set_seed(std::uint64_t seed);
};

// Full document, including paths. `snapshot` leaves out every filesystem
// path so that the document depends only on settings.
nlohmann::json to_json(const RunConfig& cfg, bool snapshot = false);
// Fields absent from `j` keep their value from `base`. Throws InvalidArgument.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

nlohmann::json to_json(const AudioConfig& cfg);
AudioConfig audio_config_from_json(const nlohmann::json& j, AudioConfig base = {});

struct TextFeaturizer {
  TfidfModel tfidf;
};

struct SpeechFeaturizer {
  AudioConfig audio;
  Index pad_frames = 1;
  std::optional<MinMaxScaler<double>> scaler;  // empty when normalization is off
};

using Featurizer = std::variant<TextFeaturizer, SpeechFeaturizer>;

struct ModelBundle {
  int format_version = kBundleFormatVersion;
  nlohmann::json config;  // RunConfig snapshot
  LabelScheme scheme;
  Featurizer featurizer;
  TrainedModel model;
};

std::string encode_f64_block(std::span<const double> values);
std::vector<double> decode_f64_block(std::string_view base64);

nlohmann::json matrix_to_json(const Matrix<double>& m);
Matrix<double> matrix_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const nlohmann::json& j);

std::string serialize_bundle(const ModelBundle& bundle);
// Throws VersionMismatch for another format_version, CorruptBundle otherwise.
ModelBundle parse_bundle(std::string_view text);

void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle load_bundle(const std::filesystem::path& path);

}  // namespace bos
