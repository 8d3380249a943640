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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero if any fails.

#include "bos/csv.hpp"
#include "bos/pipeline.hpp"
#include "bos/synthetic.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using bos::Index;
using bos::Matrix;
using bos::Vector;
using Clock = std::chrono::steady_clock;

// Tolerances and budgets.
constexpr double kDftRelTol = 1e-9;
constexpr double kDftBudgetSec = 5.0;
constexpr double kMelTol = 1e-9;
constexpr double kTfidfTol = 1e-12;
constexpr double kNbTol = 1e-12;
constexpr double kNbNormTol = 1e-9;
constexpr double kGradStep = 1e-5;
constexpr double kGradRelTol = 1e-5;
constexpr double kKinkGap = 1e-3;
constexpr double kMetricTol = 1e-12;
constexpr double kMinMacroF1 = 0.95;
constexpr double kAudioBudgetSec = 60.0;
constexpr double kTextBudgetSec = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome dft_oracle() {
  const auto start = Clock::now();
  bos::Rng rng(101);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int len = 8 << bos::uniform_index(rng, 4);  // 8, 16, 32, 64
    const int hop = 1 + static_cast<int>(bos::uniform_index(rng, static_cast<std::uint64_t>(len)));
    const auto window = bos::uniform_index(rng, 2) ? bos::Window::Hann : bos::Window::Rectangular;
    const Index n = len + static_cast<Index>(bos::uniform_index(rng, static_cast<std::uint64_t>(3 * len)));
    bos::Waveform w{Vector<double>(n), 16000};
    for (Index i = 0; i < n; ++i) w.samples[i] = 2 * bos::uniform_unit(rng) - 1;
    const auto s = bos::stft(w, {len, hop, window});
    const Index t = static_cast<Index>(bos::uniform_index(rng, static_cast<std::uint64_t>(s.frames())));
    std::vector<double> frame(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
      const double win = window == bos::Window::Hann ? oracle::periodic_hann(static_cast<std::size_t>(i), len) : 1.0;
      frame[static_cast<std::size_t>(i)] = w.samples[t * hop + i] * win;
    }
    const auto ref = oracle::dft_power(frame);
    double err = 0;
    double scale = 0;
    for (std::size_t r = 0; r < ref.size(); ++r) {
      err = std::max(err, std::abs(s.values(static_cast<Index>(r), t) - ref[r]));
      scale = std::max(scale, std::abs(ref[r]));
    }
    worst = std::max(worst, err / scale);
  }
  const double secs = seconds_since(start);
  return {worst <= kDftRelTol && secs < kDftBudgetSec, "max rel err " + fmt(worst) + ", " + fmt(secs) + " s"};
}

Outcome mel_scale() {
  bool ok = bos::hz_to_mel(0.0) == 0.0;
  const double m6300 = bos::hz_to_mel(6300.0);
  ok = ok && std::abs(m6300 - 2595.0) <= kMelTol;
  bos::Rng rng(102);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double f = 8000.0 * bos::uniform_unit(rng);
    const double back = bos::mel_to_hz(bos::hz_to_mel(f));
    worst = std::max(worst, f > 0 ? std::abs(back - f) / f : std::abs(back));
  }
  ok = ok && worst <= kMelTol;
  return {ok, "mel(6300) - 2595 = " + fmt(m6300 - 2595.0) + ", round trip " + fmt(worst)};
}

Outcome filterbank_coverage() {
  const auto fb = bos::build_mel_filterbank<double>(16000, 512, 80, 0.0, 8000.0);
  std::size_t uncovered = 0;
  for (Index k = 0; k < fb.weights.cols(); ++k) {
    const double f = bos::bin_frequency(k, 16000, 512);
    if (f > 0.0 && f < 8000.0 && !(fb.weights.col(k).sum() > 0.0)) ++uncovered;
  }
  std::size_t not_unimodal = 0;
  for (Index m = 0; m < fb.weights.rows(); ++m) {
    // Rises, then falls, over one contiguous run of positive weights.
    const auto row = fb.weights.row(m);
    int phase = 0;  // 0 before support, 1 rising, 2 falling, 3 after support
    bool bad = !(row.maxCoeff() > 0.0);
    for (Index k = 0; k < row.size() && !bad; ++k) {
      const double v = row[k];
      const double prev = k ? row[k - 1] : 0.0;
      if (v > 0.0) {
        if (phase == 0) phase = 1;
        if (phase == 3) bad = true;
        if (phase == 1 && v < prev) phase = 2;
        if (phase == 2 && v > prev) bad = true;
      } else if (phase == 1 || phase == 2) {
        phase = 3;
      }
    }
    not_unimodal += bad;
  }
  return {uncovered == 0 && not_unimodal == 0,
          std::to_string(uncovered) + " uncovered bins, " + std::to_string(not_unimodal) + " non-unimodal rows"};
}

Outcome db_contract() {
  bos::Rng rng(104);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    bos::Spectrogram p{Matrix<double>(16, 12), bos::SpectrogramAxis::MelPower};
    for (Index i = 0; i < p.values.size(); ++i) {
      p.values.data()[i] = std::pow(10.0, -12.0 * bos::uniform_unit(rng)) * (1 + trial);
    }
    p.values(3, 4) = 0.0;
    const double max = p.values.maxCoeff();
    const auto db = bos::power_to_db(p);
    for (Index i = 0; i < p.values.size(); ++i) {
      if (p.values.data()[i] == max && db.values.data()[i] != 0.0) ok = false;
      if (p.values.data()[i] <= max / 1e8 && db.values.data()[i] != -80.0) ok = false;
      if (db.values.data()[i] < -80.0 || db.values.data()[i] > 0.0) ok = false;
    }
  }
  return {ok, "20 random spectrograms"};
}

Outcome tfidf_oracle() {
  bos::Rng rng(105);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<bos::Tokens> docs(1 + bos::uniform_index(rng, 6));
    for (auto& d : docs) {
      const auto len = 1 + bos::uniform_index(rng, 8);
      for (std::uint64_t i = 0; i < len; ++i) d.push_back("w" + std::to_string(bos::uniform_index(rng, 10)));
    }
    const auto ref = oracle::tfidf(docs);
    const auto vocab = bos::fit_vocabulary(docs);
    if (vocab.terms() != ref.terms) return {false, "vocabulary differs in trial " + std::to_string(trial)};
    const auto counts = bos::count_transform(docs, vocab);
    const auto x = bos::tfidf_transform(counts, bos::fit_tfidf(counts, vocab)).values;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      for (std::size_t j = 0; j < ref.terms.size(); ++j) {
        worst = std::max(worst, std::abs(x(static_cast<Index>(i), static_cast<Index>(j)) - ref.rows[i][j]));
      }
    }
  }
  const std::vector<bos::Tokens> worked{bos::tokenize("cat sat"), bos::tokenize("cat ran")};
  const auto vocab = bos::fit_vocabulary(worked);
  const auto counts = bos::count_transform(worked, vocab);
  const auto model = bos::fit_tfidf(counts, vocab);
  const auto x = bos::tfidf_transform(counts, model).values;
  const Index cat = *vocab.index_of("cat");
  const Index sat = *vocab.index_of("sat");
  const auto r5 = [](double v) { return std::round(v * 1e5) / 1e5; };
  const bool worked_ok = r5(model.idf[sat]) == r5(1.405465) && r5(x(0, cat)) == 0.57974 && r5(x(0, sat)) == 0.81480;
  return {worst <= kTfidfTol && worked_ok,
          "max cell err " + fmt(worst) + ", idf(sat) " + std::to_string(model.idf[sat]) + ", d1 (" +
              std::to_string(x(0, cat)) + ", " + std::to_string(x(0, sat)) + ")"};
}

Outcome nb_oracle() {
  bos::Rng rng(106);
  double worst = 0;
  double worst_norm = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int classes = 2 + static_cast<int>(bos::uniform_index(rng, 2));
    const std::size_t features = 1 + bos::uniform_index(rng, 5);
    const std::size_t n = static_cast<std::size_t>(classes) + bos::uniform_index(rng, 8);
    oracle::Rows rows(n, std::vector<double>(features));
    std::vector<int> y(n);
    Matrix<double> x(static_cast<Index>(n), static_cast<Index>(features));
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = i < static_cast<std::size_t>(classes) ? static_cast<int>(i)
                                                   : static_cast<int>(bos::uniform_index(rng, classes));
      for (std::size_t j = 0; j < features; ++j) {
        rows[i][j] = static_cast<double>(bos::uniform_index(rng, 7));
        x(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
      }
    }
    bos::TrainConfig cfg;
    cfg.method = bos::Method::NB;
    const auto model = bos::train(x, y, classes, cfg);
    const auto& nb = std::get<bos::NBModel>(model.model);
    worst_norm = std::max(worst_norm, std::abs(nb.class_log_prior.array().exp().sum() - 1));
    for (int c = 0; c < classes; ++c) {
      worst_norm = std::max(worst_norm, std::abs(nb.feature_log_prob.row(c).array().exp().sum() - 1));
    }
    const auto scores = bos::predict_scores(model, x);
    for (std::size_t i = 0; i < n; ++i) {
      worst_norm = std::max(worst_norm, std::abs(scores.row(static_cast<Index>(i)).array().exp().sum() - 1));
      const auto ref = oracle::nb_log_posterior(rows, y, classes, 1.0, rows[i]);
      for (int c = 0; c < classes; ++c) {
        worst = std::max(worst, std::abs(scores(static_cast<Index>(i), c) - ref[static_cast<std::size_t>(c)]));
      }
    }
  }
  return {worst <= kNbTol && worst_norm <= kNbNormTol,
          "max log err " + fmt(worst) + ", max normalization err " + fmt(worst_norm)};
}

// Relative error of the analytic gradient against central differences, over
// the weights and the bias as one vector.
double gradient_error(bos::LinearLoss loss, const Vector<double>& w, double b, const Matrix<double>& x,
                      const Vector<double>& t, double lambda) {
  const auto g = bos::linear::gradient(loss, w, b, x, t, lambda);
  Vector<double> analytic(w.size() + 1);
  Vector<double> numeric(w.size() + 1);
  analytic << g.w, g.b;
  for (Index j = 0; j <= w.size(); ++j) {
    Vector<double> wp = w;
    Vector<double> wm = w;
    double bp = b;
    double bm = b;
    if (j < w.size()) {
      wp[j] += kGradStep;
      wm[j] -= kGradStep;
    } else {
      bp += kGradStep;
      bm -= kGradStep;
    }
    numeric[j] = (bos::linear::objective(loss, wp, bp, x, t, lambda) -
                  bos::linear::objective(loss, wm, bm, x, t, lambda)) / (2 * kGradStep);
  }
  return (analytic - numeric).norm() / std::max(numeric.norm(), 1e-12);
}

Outcome gradient_checks() {
  bos::Rng rng(107);
  double worst_lr = 0;
  double worst_svm = 0;
  int svm_points = 0;
  int attempts = 0;
  const auto random_problem = [&](Matrix<double>& x, Vector<double>& t, Vector<double>& w, double& b) {
    x.resize(8, 4);
    t.resize(8);
    w.resize(4);
    for (Index i = 0; i < x.size(); ++i) x.data()[i] = 2 * bos::uniform_unit(rng) - 1;
    for (Index i = 0; i < 8; ++i) t[i] = bos::uniform_index(rng, 2) ? 1.0 : -1.0;
    for (Index j = 0; j < 4; ++j) w[j] = 4 * bos::uniform_unit(rng) - 2;
    b = 2 * bos::uniform_unit(rng) - 1;
  };
  Matrix<double> x;
  Vector<double> t;
  Vector<double> w;
  double b = 0;
  for (int p = 0; p < 20; ++p) {
    random_problem(x, t, w, b);
    worst_lr = std::max(worst_lr, gradient_error(bos::LinearLoss::Logistic, w, b, x, t, 0.01));
  }
  while (svm_points < 20 && attempts < 100000) {
    ++attempts;
    random_problem(x, t, w, b);
    const Vector<double> margins = t.cwiseProduct((x * w).array().matrix() + Vector<double>::Constant(8, b));
    if (((margins.array() - 1.0).abs() < kKinkGap).any()) continue;
    worst_svm = std::max(worst_svm, gradient_error(bos::LinearLoss::Hinge, w, b, x, t, 0.01));
    ++svm_points;
  }
  return {worst_lr <= kGradRelTol && worst_svm <= kGradRelTol && svm_points == 20,
          "logistic " + fmt(worst_lr) + ", hinge " + fmt(worst_svm) + " over " + std::to_string(svm_points) +
              " kink-free points"};
}

Outcome forest_sanity() {
  bos::Rng rng(108);
  Matrix<double> x(50, 5);
  std::vector<int> y(50);
  for (Index i = 0; i < 50; ++i) {
    for (Index j = 0; j < 5; ++j) x(i, j) = bos::uniform_unit(rng);
    y[static_cast<std::size_t>(i)] = static_cast<int>(bos::uniform_index(rng, 2));
  }
  bos::TrainConfig single;
  single.method = bos::Method::RF;
  single.rf_trees = 1;
  single.rf_bootstrap = false;
  const bool memorized = bos::predict(bos::train(x, y, 2, single), x) == y;

  Matrix<double> xor_x(4, 2);
  xor_x << 0, 0, 0, 1, 1, 0, 1, 1;
  const std::vector<int> xor_y{0, 1, 1, 0};
  bool xor_ok = true;
  for (int trees : {5, 25}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      bos::TrainConfig cfg;
      cfg.method = bos::Method::RF;
      cfg.rf_trees = trees;
      cfg.rf_max_depth = 2;
      cfg.rf_bootstrap = false;
      cfg.seed = seed;
      xor_ok = xor_ok && bos::predict(bos::train(xor_x, xor_y, 2, cfg), xor_x) == xor_y;
    }
  }
  return {memorized && xor_ok, std::string("memorize 50 samples: ") + (memorized ? "yes" : "no") +
                                   ", xor with 5 and 25 trees at depth 2: " + (xor_ok ? "yes" : "no")};
}

bos::Dataset labelled(const std::vector<std::size_t>& sizes, const bos::LabelScheme& scheme) {
  bos::Dataset ds{{}, scheme, {}};
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    for (std::size_t i = 0; i < sizes[c]; ++i) {
      bos::Utterance u;
      u.id = "u" + std::to_string(ds.utterances.size());
      u.text = "t";
      const auto& label = scheme.label(static_cast<int>(c));
      if (scheme.kind() == bos::Task::Binary) {
        u.binary_label = label;
      } else {
        u.multiclass_label = label;
        u.binary_label = label == "N" ? "N" : "H";
      }
      ds.utterances.push_back(u);
    }
  }
  return ds;
}

Outcome split_arithmetic() {
  const auto split = bos::stratified_split(labelled({477, 406}, bos::LabelScheme::binary()), {0.75, 1, true});
  const auto tr = bos::class_distribution(split.train);
  const auto va = bos::class_distribution(split.validation);
  const bool table = tr.at("H") == 357 && tr.at("N") == 304 && va.at("H") == 120 && va.at("N") == 102;

  bos::Rng rng(109);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> sizes(5);
    for (auto& s : sizes) s = bos::uniform_index(rng, 60);
    const double fraction = 0.5 + 0.45 * bos::uniform_unit(rng);
    const auto ds = labelled(sizes, bos::LabelScheme::multiclass());
    const auto sp = bos::stratified_split(ds, {fraction, static_cast<std::uint64_t>(trial), true});
    const auto got = bos::class_distribution(sp.train);
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      const auto& label = ds.scheme.label(static_cast<int>(c));
      worst = std::max(worst, std::abs(static_cast<double>(got.at(label)) - fraction * sizes[c]));
    }
  }
  return {table && worst < 1.0, "train {H " + std::to_string(tr.at("H")) + ", N " + std::to_string(tr.at("N")) +
                                    "} validation {H " + std::to_string(va.at("H")) + ", N " +
                                    std::to_string(va.at("N")) + "}, max deviation " + fmt(worst)};
}

Outcome metric_oracle() {
  bos::Rng rng(110);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + static_cast<int>(bos::uniform_index(rng, 4));
    std::vector<std::string> labels;
    for (int c = 0; c < k; ++c) labels.push_back(std::string(1, static_cast<char>('A' + c)));
    const bos::LabelScheme scheme(bos::Task::Multiclass, labels);
    std::vector<int> t(bos::uniform_index(rng, 40));
    std::vector<int> p(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = static_cast<int>(bos::uniform_index(rng, k));
      p[i] = bos::uniform_index(rng, 3) ? t[i] : static_cast<int>(bos::uniform_index(rng, k));
    }
    const auto ref = oracle::metrics(t, p, k);
    const auto r = bos::report(bos::confusion(t, p, scheme));
    for (int c = 0; c < k; ++c) {
      const auto& m = r.per_class[static_cast<std::size_t>(c)];
      worst = std::max({worst, std::abs(m.precision - ref.precision[static_cast<std::size_t>(c)]),
                        std::abs(m.recall - ref.recall[static_cast<std::size_t>(c)]),
                        std::abs(m.f1 - ref.f1[static_cast<std::size_t>(c)])});
    }
    worst = std::max(worst, std::abs(r.macro_f1 - ref.macro));
  }
  const std::vector<int> truth{0, 1, 0, 1, 1};
  const double perfect = bos::report(bos::confusion(truth, truth, bos::LabelScheme::binary())).macro_f1;
  const std::vector<int> t{0, 0, 0, 1, 1};
  const std::vector<int> p{0, 0, 1, 0, 1};  // class 0: TP 2, FP 1, FN 1
  const double f1 = bos::report(bos::confusion(t, p, bos::LabelScheme::binary())).per_class[0].f1;
  return {worst <= kMetricTol && perfect == 1.0 && std::abs(f1 - 2.0 / 3) <= kMetricTol,
          "max err " + fmt(worst) + ", perfect macro " + fmt(perfect) + ", F1 " + std::to_string(f1)};
}

Outcome synthetic_audio(const testing::TempDir& dir) {
  const auto start = Clock::now();
  bos::RunConfig cfg;
  cfg.manifest_path = bos::synthetic::write_tone_corpus(dir / "tones").string();
  cfg.modality = bos::Modality::Speech;
  cfg.method = bos::Method::LR;
  cfg.output_dir = (dir / "tones_out").string();
  const auto out = bos::cmd_train(cfg);
  const double secs = seconds_since(start);
  return {out.report.macro_f1 >= kMinMacroF1 && secs < kAudioBudgetSec,
          "macro F1 " + fmt(out.report.macro_f1) + " on " + std::to_string(out.validation_ids.size()) +
              " validation clips, " + fmt(secs) + " s"};
}

Outcome synthetic_text(const testing::TempDir& dir) {
  const auto start = Clock::now();
  std::filesystem::create_directories(dir / "text");
  std::ofstream(dir / "text/manifest.csv", std::ios::binary) << bos::format_manifest(bos::synthetic::text_corpus());
  bos::RunConfig cfg;
  cfg.manifest_path = (dir / "text/manifest.csv").string();
  cfg.modality = bos::Modality::Text;
  cfg.method = bos::Method::SVM;
  cfg.output_dir = (dir / "text_out").string();
  const auto out = bos::cmd_train(cfg);
  const double secs = seconds_since(start);
  return {out.report.macro_f1 >= kMinMacroF1 && secs < kTextBudgetSec,
          "macro F1 " + fmt(out.report.macro_f1) + ", " + fmt(secs) + " s"};
}

Outcome sweep_rubric(const testing::TempDir& dir) {
  bos::RunConfig cfg;
  cfg.manifests = bos::synthetic::write_language_corpora(dir / "languages");
  cfg.output_dir = (dir / "sweep").string();
  const auto out = bos::cmd_sweep(cfg);
  std::size_t bundles = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir / "sweep")) {
    bundles += e.path().filename() == "model.json";
  }
  bool markers = true;
  for (const auto* grid : {&out.summary.binary, &out.summary.multiclass}) {
    for (const auto& row : grid->cells) {
      markers = markers && std::any_of(row.begin(), row.end(), [](const auto& c) { return c.best; });
    }
  }
  const bool files = std::filesystem::exists(dir / "sweep/summary_binary.txt") &&
                     std::filesystem::exists(dir / "sweep/summary_multiclass.txt") &&
                     bos::csv::read_file(dir / "sweep/summary_binary.txt").find('*') != std::string::npos &&
                     bos::csv::read_file(dir / "sweep/summary_multiclass.txt").find('*') != std::string::npos;
  return {out.reports.size() == 48 && out.failures.empty() && bundles == 48 && markers && files,
          std::to_string(out.reports.size()) + " cells trained, " + std::to_string(out.failures.size()) +
              " failed, " + std::to_string(bundles) + " bundles, best markers " + (markers ? "present" : "missing")};
}

Outcome determinism(const testing::TempDir& dir) {
  bos::synthetic::ToneCorpusSpec tones;
  tones.clips = 60;
  tones.seconds = 0.5;
  const auto speech = bos::synthetic::write_tone_corpus(dir / "det_tones", tones);
  std::ofstream(dir / "det_text.csv", std::ios::binary) << bos::format_manifest(bos::synthetic::text_corpus());
  struct Run {
    std::string manifest;
    std::string modality;
    std::string method;
  };
  const std::vector<Run> runs{{speech.string(), "speech", "rf"}, {speech.string(), "speech", "lr"},
                              {(dir / "det_text.csv").string(), "text", "svm"}};
  std::size_t identical = 0;
  std::size_t compared = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "8", "8"}) {
      const auto out = dir / ("det_" + std::to_string(r) + "_" + std::to_string(outputs.size()));
      const std::string cmd = std::string("BOS_THREADS=") + threads + " '" + BOS_CLI_PATH + "' train --manifest '" +
                              runs[r].manifest + "' --modality " + runs[r].modality + " --method " + runs[r].method +
                              " --seed 5 --out '" + out.string() + "' > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "train exited nonzero: " + cmd};
      std::string bytes;
      for (const char* name : {"model.json", "report.csv", "report.txt", "validation_predictions.csv"}) {
        bytes += bos::csv::read_file(out / name);
        bytes += '\0';
      }
      outputs.push_back(bytes);
    }
    for (const auto& o : outputs) {
      ++compared;
      identical += o == outputs.front();
    }
  }
  return {identical == compared, std::to_string(identical) + "/" + std::to_string(compared) +
                                     " output sets identical across BOS_THREADS=1 and 8"};
}

}  // namespace

int main() {
  testing::TempDir dir("acceptance");
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"DFT oracle", dft_oracle},
      {"Mel scale", mel_scale},
      {"Filterbank coverage", filterbank_coverage},
      {"dB contract", db_contract},
      {"TF-IDF oracle", tfidf_oracle},
      {"NB oracle", nb_oracle},
      {"Gradient checks", gradient_checks},
      {"Forest sanity", forest_sanity},
      {"Split arithmetic", split_arithmetic},
      {"Metric oracle", metric_oracle},
      {"End-to-end synthetic audio", [&] { return synthetic_audio(dir); }},
      {"End-to-end synthetic text", [&] { return synthetic_text(dir); }},
      {"Sweep rubric", [&] { return sweep_rubric(dir); }},
      {"Determinism", [&] { return determinism(dir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
