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

#include "bos/pipeline.hpp"

#include "bos/csv.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bos {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string manifest_digest(const fs::path& path) { return hex64(fnv1a64(csv::read_file(path))); }

bool same_audio(const AudioConfig& a, const AudioConfig& b) { return to_json(a) == to_json(b); }

std::vector<Tokens> documents(const std::vector<Utterance>& rows) {
  std::vector<Tokens> docs;
  docs.reserve(rows.size());
  for (const auto& u : rows) docs.push_back(tokenize(u.text));
  return docs;
}

std::vector<std::string> audio_paths(const std::vector<Utterance>& rows) {
  std::vector<std::string> paths;
  paths.reserve(rows.size());
  for (const auto& u : rows) paths.push_back(u.audio_path);
  return paths;
}

std::vector<Spectrogram> spectrograms(const std::vector<Utterance>& rows, SpectrogramStore& store) {
  const auto paths = audio_paths(rows);
  store.load(paths);
  std::vector<Spectrogram> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(store.at(p));
  return out;
}

Modality modality_of(const Featurizer& f) {
  return std::holds_alternative<TextFeaturizer>(f) ? Modality::Text : Modality::Speech;
}

std::string run_title(const RunConfig& cfg) {
  std::string title;
  if (!cfg.language.name.empty()) title = cfg.language.name + " ";
  title += std::string(to_string(cfg.task)) + " " + std::string(to_string(cfg.modality)) + " " +
           std::string(to_string(cfg.method));
  return title;
}

}  // namespace

SpectrogramStore::SpectrogramStore(AudioConfig cfg, fs::path cache_dir, std::size_t threads)
    : cfg_(cfg), cache_dir_(std::move(cache_dir)), threads_(threads == 0 ? worker_count() : threads) {}

void SpectrogramStore::load(std::span<const std::string> paths) {
  std::vector<std::string> todo;
  for (const auto& p : paths) {
    if (!specs_.contains(p) && std::find(todo.begin(), todo.end(), p) == todo.end()) todo.push_back(p);
  }
  if (todo.empty()) return;
  auto specs = extract_log_mel(todo, cfg_, threads_, cache_dir_);
  for (std::size_t i = 0; i < todo.size(); ++i) specs_.emplace(todo[i], std::move(specs[i]));
}

const Spectrogram& SpectrogramStore::at(const std::string& path) const {
  auto it = specs_.find(path);
  if (it == specs_.end()) throw Error(ErrorKind::InvalidArgument, "spectrogram not loaded: " + path);
  return it->second;
}

void require_inputs(const std::vector<Utterance>& rows, Modality modality) {
  std::vector<std::string> missing;
  for (const auto& u : rows) {
    if (modality == Modality::Text ? !u.has_text() : !u.has_audio()) missing.push_back(u.id);
  }
  if (!missing.empty()) {
    std::string ids;
    for (const auto& id : missing) ids += (ids.empty() ? "" : ", ") + id;
    throw Error(ErrorKind::MissingInput,
                std::string(modality == Modality::Text ? "text" : "audio") + " missing for ids: " + ids);
  }
  if (modality == Modality::Speech) {
    for (const auto& u : rows) {
      if (!fs::is_regular_file(u.audio_path)) {
        throw Error(ErrorKind::UnreadableFile, "audio file not found: " + u.audio_path + " (id " + u.id + ")");
      }
    }
  }
}

std::pair<Featurizer, Matrix<double>> fit_featurizer(const RunConfig& cfg, const std::vector<Utterance>& rows,
                                                     SpectrogramStore& store) {
  if (cfg.modality == Modality::Text) {
    const auto docs = documents(rows);
    const auto counts = count_transform(docs, fit_vocabulary(docs));
    TextFeaturizer tf{fit_tfidf(counts, fit_vocabulary(docs))};
    Matrix<double> x = tfidf_transform(counts, tf.tfidf).values;
    return {std::move(tf), std::move(x)};
  }
  const auto specs = spectrograms(rows, store);
  SpeechFeaturizer sf{store.config(), 1, std::nullopt};
  for (const auto& s : specs) sf.pad_frames = std::max(sf.pad_frames, s.frames());
  Matrix<double> x = stack_flattened(specs, sf.pad_frames).values;
  if (cfg.audio.normalize) {
    sf.scaler = MinMaxScaler<double>::fit(x);
    x = sf.scaler->transform(x);
  }
  return {std::move(sf), std::move(x)};
}

Matrix<double> featurize(const Featurizer& featurizer, const std::vector<Utterance>& rows, SpectrogramStore& store) {
  if (const auto* tf = std::get_if<TextFeaturizer>(&featurizer)) {
    return tfidf_transform(count_transform(documents(rows), tf->tfidf.vocabulary), tf->tfidf).values;
  }
  const auto& sf = std::get<SpeechFeaturizer>(featurizer);
  if (!same_audio(sf.audio, store.config())) {
    throw Error(ErrorKind::InvalidArgument, "spectrogram store uses a different audio configuration");
  }
  if (rows.empty()) return Matrix<double>(0, static_cast<Index>(sf.audio.mel.n_mels) * sf.pad_frames);
  Matrix<double> x = stack_flattened(spectrograms(rows, store), sf.pad_frames).values;
  if (sf.scaler) x = sf.scaler->transform(x);
  return x;
}

TrainOutcome train_on_dataset(const RunConfig& cfg, const Dataset& ds, SpectrogramStore& store) {
  if (!(ds.scheme == cfg.scheme())) throw Error(ErrorKind::InvalidArgument, "dataset label scheme differs from config");
  require_inputs(ds.utterances, cfg.modality);

  std::optional<SpectrogramStore> local;
  SpectrogramStore* audio = &store;
  if (cfg.modality == Modality::Speech && !same_audio(store.config(), cfg.audio)) {
    local.emplace(cfg.audio, cfg.cache_dir);
    audio = &*local;
  }

  TrainOutcome out;
  Split split = stratified_split(ds, cfg.split);
  out.warnings = split.warnings;
  const std::vector<int> y = split.train.label_indices();
  const std::vector<int> gold = split.validation.label_indices();

  auto [featurizer, x_train] = fit_featurizer(cfg, split.train.utterances, *audio);
  TrainConfig tc = cfg.train;
  tc.method = cfg.method;
  TrainedModel model = train(x_train, y, ds.scheme.size(), tc, &out.warnings);

  const Matrix<double> x_val = featurize(featurizer, split.validation.utterances, *audio);
  const std::vector<int> pred = predict(model, x_val);
  out.report = report(confusion(gold, pred, ds.scheme));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    out.validation_ids.push_back(split.validation.utterances[i].id);
    out.validation_predictions.push_back(ds.scheme.label(pred[i]));
  }

  out.bundle.config = to_json(cfg, /*snapshot=*/true);
  out.bundle.scheme = ds.scheme;
  out.bundle.featurizer = std::move(featurizer);
  out.bundle.model = std::move(model);
  return out;
}

std::string predictions_csv(std::span<const std::string> ids, std::span<const std::string> labels) {
  std::string out = csv::format_row({"id", "predicted_label"});
  for (std::size_t i = 0; i < ids.size(); ++i) out += csv::format_row({ids[i], labels[i]});
  return out;
}

void write_train_outputs(const fs::path& dir, const TrainOutcome& outcome, std::string_view title) {
  save_bundle(dir / "model.json", outcome.bundle);
  write_text(dir / "report.csv", report_to_csv(outcome.report));
  write_text(dir / "report.txt", report_to_text(outcome.report, title));
  write_text(dir / "validation_predictions.csv", predictions_csv(outcome.validation_ids, outcome.validation_predictions));
}

TrainOutcome cmd_train(const RunConfig& cfg) {
  if (cfg.manifest_path.empty()) throw Error(ErrorKind::InvalidArgument, "no manifest given");
  const Dataset ds = load_manifest(cfg.manifest_path, cfg.scheme(), cfg.language);
  SpectrogramStore store(cfg.audio, cfg.cache_dir);
  TrainOutcome out = train_on_dataset(cfg, ds, store);
  out.bundle.config["manifest_fnv1a64"] = manifest_digest(cfg.manifest_path);
  write_train_outputs(cfg.output_dir, out, run_title(cfg));
  return out;
}

SweepOutcome cmd_sweep(const RunConfig& cfg) {
  if (cfg.manifests.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one language manifest");
  for (const auto& [name, path] : cfg.manifests) {
    if (!fs::is_regular_file(path)) throw Error(ErrorKind::UnreadableFile, "manifest not found: " + path);
  }

  SweepOutcome out;
  SpectrogramStore store(cfg.audio, cfg.cache_dir);
  const fs::path root = cfg.output_dir;
  for (const auto& [name, path] : cfg.manifests) {
    const Language language = Language::parse(name);
    const std::string digest = manifest_digest(path);
    for (Task task : {Task::Binary, Task::Multiclass}) {
      RunConfig cell = cfg;
      cell.language = language;
      cell.task = task;
      cell.manifest_path = path;
      std::optional<Dataset> ds;
      std::string load_error;
      try {
        ds = load_manifest(path, cell.scheme(), language);
      } catch (const Error& e) {
        load_error = std::string(to_string(e.kind())) + ": " + e.what();
      }
      for (Modality modality : kAllModalities) {
        for (Method method : kAllMethods) {
          cell.modality = modality;
          cell.method = method;
          cell.train.method = method;
          const SweepKey key{language.name, task, modality, method};
          if (!ds) {
            out.failures[key] = load_error;
            continue;
          }
          try {
            TrainOutcome run = train_on_dataset(cell, *ds, store);
            run.bundle.config["manifest_fnv1a64"] = digest;
            write_train_outputs(root / language.name / std::string(to_string(task)) /
                                    std::string(to_string(modality)) / std::string(to_string(method)),
                                run, run_title(cell));
            out.reports.emplace(key, std::move(run.report));
          } catch (const Error& e) {
            out.failures[key] = std::string(to_string(e.kind())) + ": " + e.what();
          }
        }
      }
    }
  }

  out.summary = sweep_summary(out.reports, out.failures);
  for (const auto* grid : {&out.summary.binary, &out.summary.multiclass}) {
    const std::string stem = "summary_" + std::string(to_string(grid->task));
    write_text(root / (stem + ".txt"), grid_to_text(*grid));
    write_text(root / (stem + ".csv"), grid_to_csv(*grid));
  }
  for (const auto& [name, path] : cfg.manifests) {
    const Language language = Language::parse(name);
    for (Task task : {Task::Binary, Task::Multiclass}) {
      RunConfig probe = cfg;
      probe.task = task;
      write_text(root / ("per_class_" + language.name + "_" + std::string(to_string(task)) + ".txt"),
                 per_class_table(out.reports, language.name, task, probe.scheme()));
    }
  }
  return out;
}

Prediction predict_rows(const ModelBundle& bundle, const std::vector<Utterance>& rows, SpectrogramStore& store) {
  Prediction out;
  if (rows.empty()) return out;
  require_inputs(rows, modality_of(bundle.featurizer));
  const auto idx = predict(bundle.model, featurize(bundle.featurizer, rows, store));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.ids.push_back(rows[i].id);
    out.labels.push_back(bundle.scheme.label(idx[i]));
  }
  return out;
}

namespace {

SpectrogramStore store_for(const ModelBundle& bundle) {
  if (const auto* sf = std::get_if<SpeechFeaturizer>(&bundle.featurizer)) return SpectrogramStore(sf->audio);
  return SpectrogramStore(AudioConfig{});
}

}  // namespace

Prediction cmd_predict(const fs::path& bundle_path, const fs::path& manifest_path, const fs::path& out_path) {
  const ModelBundle bundle = load_bundle(bundle_path);
  const Dataset ds = load_manifest(manifest_path, bundle.scheme);
  SpectrogramStore store = store_for(bundle);
  Prediction out = predict_rows(bundle, ds.utterances, store);
  write_text(out_path, predictions_csv(out.ids, out.labels));
  return out;
}

ClassificationReport cmd_report(const fs::path& bundle_path, const fs::path& manifest_path, const fs::path& out_dir) {
  const ModelBundle bundle = load_bundle(bundle_path);
  const Dataset ds = load_manifest(manifest_path, bundle.scheme);
  const std::vector<int> gold = ds.label_indices();
  SpectrogramStore store = store_for(bundle);
  const Prediction pred = predict_rows(bundle, ds.utterances, store);
  std::vector<int> idx;
  for (const auto& label : pred.labels) idx.push_back(bundle.scheme.require_index(label));
  ClassificationReport r = report(confusion(gold, idx, bundle.scheme));
  write_text(out_dir / "report.csv", report_to_csv(r));
  write_text(out_dir / "report.txt", report_to_text(r, manifest_path.filename().string()));
  return r;
}

std::string inspect_manifest(const RunConfig& cfg) {
  if (cfg.manifest_path.empty()) throw Error(ErrorKind::InvalidArgument, "no manifest given");
  const Dataset ds = load_manifest(cfg.manifest_path, cfg.scheme(), cfg.language);
  std::ostringstream out;
  std::size_t with_text = 0;
  std::size_t with_audio = 0;
  std::size_t unlabeled = 0;
  for (const auto& u : ds.utterances) {
    with_text += u.has_text();
    with_audio += u.has_audio();
    unlabeled += !ds.label_of(u).has_value();
  }
  out << "manifest: " << cfg.manifest_path << "\n";
  out << "utterances: " << ds.utterances.size() << " (text " << with_text << ", audio " << with_audio
      << ", unlabeled " << unlabeled << ")\n";
  out << "class distribution (" << to_string(cfg.task) << "):\n";
  for (const auto& [label, n] : class_distribution(ds)) out << "  " << label << " " << n << "\n";

  std::vector<Utterance> text_rows;
  std::vector<Utterance> audio_rows;
  for (const auto& u : ds.utterances) {
    if (u.has_text()) text_rows.push_back(u);
    if (u.has_audio()) audio_rows.push_back(u);
  }
  if (!text_rows.empty()) {
    const auto vocab = fit_vocabulary(documents(text_rows));
    out << "text features: " << text_rows.size() << " x " << vocab.size() << "\n";
  }
  if (!audio_rows.empty()) {
    require_inputs(audio_rows, Modality::Speech);
    SpectrogramStore store(cfg.audio, cfg.cache_dir);
    Index frames = 1;
    for (const auto& s : spectrograms(audio_rows, store)) frames = std::max(frames, s.frames());
    out << "speech features: " << audio_rows.size() << " x " << cfg.audio.mel.n_mels * frames << " ("
        << cfg.audio.mel.n_mels << " mels x " << frames << " frames)\n";
  }
  return out.str();
}

std::string inspect_bundle(const fs::path& bundle_path) {
  const ModelBundle b = load_bundle(bundle_path);
  std::ostringstream out;
  out << "format_version: " << b.format_version << "\n";
  out << "method: " << to_string(b.model.method()) << "\n";
  out << "labels (" << to_string(b.scheme.kind()) << "):";
  for (const auto& l : b.scheme.labels()) out << " " << l;
  out << "\n";
  if (const auto* tf = std::get_if<TextFeaturizer>(&b.featurizer)) {
    out << "featurizer: text, vocabulary " << tf->tfidf.vocabulary.size() << "\n";
  } else {
    const auto& sf = std::get<SpeechFeaturizer>(b.featurizer);
    out << "featurizer: speech, " << sf.audio.mel.n_mels << " mels x " << sf.pad_frames << " frames, "
        << (sf.scaler ? "min-max scaled" : "unscaled") << "\n";
  }
  out << "features: " << b.model.n_features << "\n";
  if (auto it = b.config.find("manifest_fnv1a64"); it != b.config.end()) {
    out << "manifest digest: " << it->get<std::string>() << "\n";
  }
  return out.str();
}

}  // namespace bos
