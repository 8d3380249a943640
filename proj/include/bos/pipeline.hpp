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

// End-to-end commands behind the `bos` tool.

#pragma once

#include "bos/bundle.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bos {

// Log-Mel spectrograms keyed on audio path. One store serves every run that
// shares an audio configuration, so a sweep decodes each clip once.
class SpectrogramStore {
 public:
  explicit SpectrogramStore(AudioConfig cfg, std::filesystem::path cache_dir = {}, std::size_t threads = 0);

  // Featurizes the paths not yet held.
  void load(std::span<const std::string> paths);
  const Spectrogram& at(const std::string& path) const;
  const AudioConfig& config() const { return cfg_; }

 private:
  AudioConfig cfg_;
  std::filesystem::path cache_dir_;
  std::size_t threads_;
  std::unordered_map<std::string, Spectrogram> specs_;
};

// Throws MissingInput listing the ids that lack the modality's input, or
// UnreadableFile naming an audio path that does not exist.
void require_inputs(const std::vector<Utterance>& rows, Modality modality);

// Fits the featurizer on `rows` and returns it with the training features.
std::pair<Featurizer, Matrix<double>> fit_featurizer(const RunConfig& cfg, const std::vector<Utterance>& rows,
                                                     SpectrogramStore& store);
Matrix<double> featurize(const Featurizer& featurizer, const std::vector<Utterance>& rows, SpectrogramStore& store);

struct TrainOutcome {
  ModelBundle bundle;
  ClassificationReport report;
  std::vector<std::string> validation_ids;
  std::vector<std::string> validation_predictions;
  std::vector<std::string> warnings;
};

// Split, fit the featurizer on the training half, train, score the
// validation half.
TrainOutcome train_on_dataset(const RunConfig& cfg, const Dataset& ds, SpectrogramStore& store);

std::string predictions_csv(std::span<const std::string> ids, std::span<const std::string> labels);

// Writes model.json, report.csv, report.txt and validation_predictions.csv.
void write_train_outputs(const std::filesystem::path& dir, const TrainOutcome& outcome, std::string_view title);

TrainOutcome cmd_train(const RunConfig& cfg);

struct SweepOutcome {
  std::map<SweepKey, ClassificationReport> reports;
  std::map<SweepKey, std::string> failures;
  SweepSummary summary;
};

// Trains every rubric cell for the languages in cfg.manifests. A failing cell
// is recorded and the sweep moves on.
SweepOutcome cmd_sweep(const RunConfig& cfg);

struct Prediction {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
};

Prediction predict_rows(const ModelBundle& bundle, const std::vector<Utterance>& rows, SpectrogramStore& store);

// Writes `id,predicted_label` to out_path in manifest order.
Prediction cmd_predict(const std::filesystem::path& bundle_path, const std::filesystem::path& manifest_path,
                       const std::filesystem::path& out_path);

// Scores the bundle against the manifest's gold labels and writes
// report.csv and report.txt under out_dir. Throws UnlabeledUtterance.
ClassificationReport cmd_report(const std::filesystem::path& bundle_path, const std::filesystem::path& manifest_path,
                                const std::filesystem::path& out_dir);

// Class distribution and feature shapes of a manifest.
std::string inspect_manifest(const RunConfig& cfg);
std::string inspect_bundle(const std::filesystem::path& bundle_path);

}  // namespace bos
