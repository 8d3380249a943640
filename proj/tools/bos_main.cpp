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

// bos: train, sweep, predict, report, inspect.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 internal error. Failures
// print one JSON object on stderr: {"error": kind, "message": ..., "exit_code": n}.

#include "bos/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

constexpr int kUsage = 1;
constexpr int kDataError = 2;
constexpr int kInternal = 3;

int fail(std::string_view kind, std::string_view message, int code) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  return code;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::vector<std::string> manifests;
  std::string task;
  std::string modality;
  std::string method;
  std::string language;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  std::string bundle;
  std::string cache_dir;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration; flags override its values");
  cmd->add_option("--out", f.out, "Output directory");
}

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--task", f.task, "binary or multiclass");
  cmd->add_option("--seed", f.seed, "Seed for the split and the learner");
  cmd->add_option("--cache-dir", f.cache_dir, "Directory for cached spectrograms");
}

bos::RunConfig build_config(const Flags& f, bool sweep) {
  bos::RunConfig cfg;
  try {
    if (!f.config.empty()) cfg = bos::load_run_config(f.config);
    if (!f.task.empty()) cfg.task = bos::parse_task(f.task);
    if (!f.modality.empty()) cfg.modality = bos::parse_modality(f.modality);
    if (!f.method.empty()) {
      cfg.method = bos::parse_method(f.method);
      cfg.train.method = cfg.method;
    }
    if (!f.language.empty()) cfg.language = bos::Language::parse(f.language);
  } catch (const bos::Error& e) {
    throw UsageError(e.what());
  }
  if (f.seed) cfg.set_seed(*f.seed);
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (!f.cache_dir.empty()) cfg.cache_dir = f.cache_dir;
  if (sweep) {
    if (!f.manifests.empty()) cfg.manifests.clear();
    for (const auto& m : f.manifests) {
      const auto eq = m.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("sweep manifests take the form language=path: " + m);
      cfg.manifests[bos::Language::parse(m.substr(0, eq)).name] = m.substr(eq + 1);
    }
    if (cfg.manifests.empty()) throw UsageError("sweep needs --manifest language=path");
  } else {
    if (f.manifests.size() > 1) throw UsageError("give one --manifest");
    if (!f.manifests.empty()) cfg.manifest_path = f.manifests.front();
  }
  return cfg;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hate speech detection from text and speech features"};
  app.require_subcommand(1);
  Flags f;

  auto* train = app.add_subcommand("train", "Train one model and score it on the validation split");
  train->add_option("--manifest", f.manifests, "Manifest CSV");
  train->add_option("--modality", f.modality, "text or speech");
  train->add_option("--method", f.method, "nb, svm, lr or rf");
  train->add_option("--language", f.language, "Language name recorded in outputs");
  add_run_flags(train, f);
  add_common(train, f);

  auto* sweep = app.add_subcommand("sweep", "Train every task, modality and method for each language");
  sweep->add_option("--manifest", f.manifests, "language=path, repeatable");
  add_run_flags(sweep, f);
  add_common(sweep, f);

  auto* predict = app.add_subcommand("predict", "Label a manifest with a trained model");
  predict->add_option("--bundle", f.bundle, "model.json")->required();
  predict->add_option("--manifest", f.manifests, "Manifest CSV")->required();
  predict->add_option("--out", f.out, "Output directory")->default_val("out");

  auto* rep = app.add_subcommand("report", "Score a trained model against gold labels");
  rep->add_option("--bundle", f.bundle, "model.json")->required();
  rep->add_option("--manifest", f.manifests, "Manifest CSV with labels")->required();
  rep->add_option("--out", f.out, "Output directory")->default_val("out");

  auto* inspect = app.add_subcommand("inspect", "Print class distribution and feature shapes");
  inspect->add_option("--manifest", f.manifests, "Manifest CSV");
  inspect->add_option("--bundle", f.bundle, "model.json");
  inspect->add_option("--language", f.language, "Language name");
  add_run_flags(inspect, f);
  inspect->add_option("--config", f.config, "JSON run configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail("Usage", e.what(), kUsage);
  }

  try {
    if (*train) {
      const auto cfg = build_config(f, false);
      if (cfg.manifest_path.empty()) throw UsageError("train needs --manifest");
      const auto out = bos::cmd_train(cfg);
      print_warnings(out.warnings);
      std::cout << bos::report_to_text(out.report, "validation");
      std::cout << "wrote " << cfg.output_dir << "/model.json\n";
    } else if (*sweep) {
      const auto cfg = build_config(f, true);
      const auto out = bos::cmd_sweep(cfg);
      for (const auto& [key, msg] : out.failures) {
        std::cerr << "cell failed: " << key.language << " " << bos::to_string(key.task) << " "
                  << bos::to_string(key.modality) << " " << bos::to_string(key.method) << ": " << msg << "\n";
      }
      std::cout << bos::grid_to_text(out.summary.binary) << "\n" << bos::grid_to_text(out.summary.multiclass);
      std::cout << out.summary.present << " of " << bos::sweep_rubric().size() << " cells trained\n";
    } else if (*predict) {
      const std::filesystem::path path = std::filesystem::path(f.out) / "predictions.csv";
      const auto out = bos::cmd_predict(f.bundle, f.manifests.front(), path);
      std::cout << "wrote " << out.ids.size() << " predictions to " << path.string() << "\n";
    } else if (*rep) {
      const auto r = bos::cmd_report(f.bundle, f.manifests.front(), f.out);
      std::cout << bos::report_to_text(r, f.manifests.front());
    } else if (*inspect) {
      if (!f.bundle.empty()) {
        std::cout << bos::inspect_bundle(f.bundle);
      } else {
        const auto cfg = build_config(f, false);
        if (cfg.manifest_path.empty()) throw UsageError("inspect needs --manifest or --bundle");
        std::cout << bos::inspect_manifest(cfg);
      }
    }
  } catch (const UsageError& e) {
    return fail("Usage", e.what(), kUsage);
  } catch (const bos::Error& e) {
    return fail(bos::to_string(e.kind()), e.what(), kDataError);
  } catch (const std::exception& e) {
    return fail("Internal", e.what(), kInternal);
  }
  return 0;
}
