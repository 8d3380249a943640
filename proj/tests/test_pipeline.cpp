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

#include "bos/csv.hpp"
#include "bos/pipeline.hpp"
#include "bos/synthetic.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <fstream>

using bos::ErrorKind;
using testing::error_kind;

namespace {

std::string slurp(const std::filesystem::path& p) { return bos::csv::read_file(p); }

void write(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

bos::RunConfig text_config(const testing::TempDir& dir, bos::Method method) {
  bos::synthetic::TextCorpusSpec spec;
  spec.docs = 80;
  write(dir / "text/manifest.csv", bos::format_manifest(bos::synthetic::text_corpus(spec)));
  bos::RunConfig cfg;
  cfg.manifest_path = (dir / "text/manifest.csv").string();
  cfg.modality = bos::Modality::Text;
  cfg.method = method;
  cfg.output_dir = (dir / "out").string();
  return cfg;
}

}  // namespace

TEST_CASE("text training writes every artifact and predicts its own validation split") {
  testing::TempDir dir("pipe_text");
  auto cfg = text_config(dir, bos::Method::LR);
  const auto out = bos::cmd_train(cfg);
  CHECK(out.report.macro_f1 >= 0.95);
  for (const char* name : {"model.json", "report.csv", "report.txt", "validation_predictions.csv"}) {
    CHECK(std::filesystem::exists(dir / (std::string("out/") + name)));
  }

  const auto all = bos::load_manifest(cfg.manifest_path, bos::LabelScheme::binary());
  std::vector<bos::Utterance> val;
  for (const auto& id : out.validation_ids) {
    for (const auto& u : all.utterances) {
      if (u.id == id) val.push_back(u);
    }
  }
  write(dir / "val/manifest.csv", bos::format_manifest(val));
  const auto pred = bos::cmd_predict(dir / "out/model.json", dir / "val/manifest.csv", dir / "val/pred.csv");
  CHECK(pred.labels == out.validation_predictions);
  CHECK(slurp(dir / "val/pred.csv") == slurp(dir / "out/validation_predictions.csv"));

  const auto r = bos::cmd_report(dir / "out/model.json", dir / "val/manifest.csv", dir / "val");
  CHECK(bos::report_to_csv(r) == slurp(dir / "out/report.csv"));
}

TEST_CASE("identical runs write identical bytes") {
  testing::TempDir dir("pipe_det");
  auto cfg = text_config(dir, bos::Method::RF);
  bos::cmd_train(cfg);
  const auto first = slurp(dir / "out/model.json");
  cfg.output_dir = (dir / "again").string();
  bos::cmd_train(cfg);
  CHECK(slurp(dir / "again/model.json") == first);
  CHECK(slurp(dir / "again/report.csv") == slurp(dir / "out/report.csv"));
}

TEST_CASE("gold equal to predictions gives macro one") {
  testing::TempDir dir("pipe_gold");
  auto cfg = text_config(dir, bos::Method::NB);
  bos::cmd_train(cfg);
  const auto ds = bos::load_manifest(cfg.manifest_path, bos::LabelScheme::binary());
  bos::SpectrogramStore store{bos::AudioConfig{}};
  auto rows = ds.utterances;
  const auto pred = bos::predict_rows(bos::load_bundle(dir / "out/model.json"), rows, store);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].binary_label = pred.labels[i];
  write(dir / "gold/manifest.csv", bos::format_manifest(rows));
  CHECK(bos::cmd_report(dir / "out/model.json", dir / "gold/manifest.csv", dir / "gold").macro_f1 == 1.0);
}

TEST_CASE("prediction input validation") {
  testing::TempDir dir("pipe_pred");
  auto cfg = text_config(dir, bos::Method::SVM);
  bos::cmd_train(cfg);
  write(dir / "empty.csv", std::string(bos::kManifestHeader) + "\n");
  const auto none = bos::cmd_predict(dir / "out/model.json", dir / "empty.csv", dir / "empty_pred.csv");
  CHECK(none.ids.empty());
  CHECK(slurp(dir / "empty_pred.csv") == "id,predicted_label\n");

  write(dir / "audio_only.csv", std::string(bos::kManifestHeader) + "\nq1,s,,x,0,,a.wav,,\nq2,s,,x,0,hello,,,\nq3,s,,x,0,,b.wav,,\n");
  try {
    bos::cmd_predict(dir / "out/model.json", dir / "audio_only.csv", dir / "p.csv");
    FAIL("expected MissingInput");
  } catch (const bos::Error& e) {
    CHECK(e.kind() == ErrorKind::MissingInput);
    CHECK(std::string(e.what()).find("q1, q3") != std::string::npos);
  }
}

TEST_CASE("speech training names a missing audio file") {
  testing::TempDir dir("pipe_speech");
  bos::synthetic::ToneCorpusSpec spec;
  spec.clips = 12;
  spec.seconds = 0.1;
  const auto manifest = bos::synthetic::write_tone_corpus(dir.path(), spec);
  std::filesystem::remove(dir / "clips/tone004.wav");
  bos::RunConfig cfg;
  cfg.manifest_path = manifest.string();
  cfg.modality = bos::Modality::Speech;
  cfg.output_dir = (dir / "out").string();
  try {
    bos::cmd_train(cfg);
    FAIL("expected UnreadableFile");
  } catch (const bos::Error& e) {
    CHECK(e.kind() == ErrorKind::UnreadableFile);
    CHECK(std::string(e.what()).find("tone004.wav") != std::string::npos);
  }
}

TEST_CASE("sweep with one language absent") {
  testing::TempDir dir("pipe_sweep");
  bos::synthetic::LanguageCorpusSpec spec;
  spec.per_class = 4;
  spec.seconds = 0.1;
  bos::RunConfig cfg;
  cfg.manifests["tamil"] = bos::synthetic::write_language_corpus(dir / "tamil", bos::Language::tamil(), spec).string();
  cfg.manifests["telugu"] = bos::synthetic::write_language_corpus(dir / "telugu", bos::Language::telugu(), spec).string();
  cfg.train.rf_trees = 5;
  cfg.output_dir = (dir / "sweep").string();
  const auto out = bos::cmd_sweep(cfg);
  CHECK(out.reports.size() + out.failures.size() == 32);
  CHECK(out.summary.missing.size() == 16);
  for (const auto& key : out.summary.missing) CHECK(key.language == "malayalam");
  CHECK(std::filesystem::exists(dir / "sweep/summary_binary.txt"));
  CHECK(std::filesystem::exists(dir / "sweep/summary_multiclass.csv"));
  CHECK(std::filesystem::exists(dir / "sweep/tamil/multiclass/speech/rf/model.json"));
  CHECK(slurp(dir / "sweep/summary_binary.txt").find("--") != std::string::npos);
}

TEST_CASE("inspect reports distribution and shapes") {
  testing::TempDir dir("pipe_inspect");
  bos::synthetic::LanguageCorpusSpec spec;
  spec.per_class = 2;
  spec.seconds = 0.1;
  bos::RunConfig cfg;
  cfg.manifest_path = bos::synthetic::write_language_corpus(dir.path(), bos::Language::malayalam(), spec).string();
  cfg.task = bos::Task::Multiclass;
  const auto text = bos::inspect_manifest(cfg);
  CHECK(text.find("utterances: 10") != std::string::npos);
  CHECK(text.find("  C 2\n") != std::string::npos);
  CHECK(text.find("speech features: 10 x 400 (80 mels x 5 frames)") != std::string::npos);
}
