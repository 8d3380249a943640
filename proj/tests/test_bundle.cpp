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

#include "bos/bundle.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <limits>

using bos::ErrorKind;
using bos::Index;
using bos::Matrix;
using testing::error_kind;

namespace {

bos::ModelBundle sample_bundle(bos::Method method, const Matrix<double>& x, const std::vector<int>& y) {
  bos::TrainConfig cfg;
  cfg.method = method;
  cfg.rf_trees = 7;
  bos::ModelBundle b;
  b.config = bos::to_json(bos::RunConfig{}, true);
  b.scheme = bos::LabelScheme::multiclass({"A", "B", "C"});
  b.featurizer = bos::SpeechFeaturizer{bos::AudioConfig{}, 3, bos::MinMaxScaler<double>::fit(x)};
  b.model = bos::train(x, y, 3, cfg);
  return b;
}

}  // namespace

TEST_CASE("float64 blocks keep every bit") {
  const std::vector<double> values{0.0,
                                   -0.0,
                                   1.0 / 3,
                                   std::numeric_limits<double>::infinity(),
                                   -std::numeric_limits<double>::infinity(),
                                   std::numeric_limits<double>::denorm_min(),
                                   std::numeric_limits<double>::max(),
                                   std::nan("")};
  for (std::size_t n = 0; n <= values.size(); ++n) {
    const std::span<const double> head(values.data(), n);
    const auto back = bos::decode_f64_block(bos::encode_f64_block(head));
    REQUIRE(back.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::bit_cast<std::uint64_t>(back[i]) == std::bit_cast<std::uint64_t>(values[i]));
  }
  CHECK(bos::encode_f64_block(std::vector<double>{1.0}) == "AAAAAAAA8D8=");
  CHECK(error_kind([] { bos::decode_f64_block("AAAA"); }) == ErrorKind::CorruptBundle);
  CHECK(error_kind([] { bos::decode_f64_block("AA!AAAAA8D8="); }) == ErrorKind::CorruptBundle);
}

TEST_CASE("matrices serialize row major") {
  Matrix<double> m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const auto j = bos::matrix_to_json(m);
  CHECK(bos::decode_f64_block(j["f64le"].get<std::string>()) == std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(bos::matrix_from_json(j) == m);
  auto broken = j;
  broken["rows"] = 3;
  CHECK(error_kind([&] { bos::matrix_from_json(broken); }) == ErrorKind::CorruptBundle);
}

TEST_CASE("bundle round trip reproduces predictions exactly") {
  bos::Rng rng(91);
  Matrix<double> x(30, 5);
  std::vector<int> y(30);
  for (Index i = 0; i < 30; ++i) {
    for (Index j = 0; j < 5; ++j) x(i, j) = bos::uniform_unit(rng) + (j == i % 3 ? 1.0 : 0.0);
    y[static_cast<std::size_t>(i)] = static_cast<int>(i % 3);
  }
  Matrix<double> probe(100, 5);
  for (Index i = 0; i < probe.size(); ++i) probe.data()[i] = 2 * bos::uniform_unit(rng);
  for (auto method : bos::kAllMethods) {
    const auto b = sample_bundle(method, x, y);
    const auto text = bos::serialize_bundle(b);
    const auto back = bos::parse_bundle(text);
    CHECK(bos::serialize_bundle(back) == text);
    CHECK(bos::predict(back.model, probe) == bos::predict(b.model, probe));
    CHECK(bos::predict_scores(back.model, probe) == bos::predict_scores(b.model, probe));
    CHECK(back.scheme == b.scheme);
  }
}

TEST_CASE("bundle format gate and corruption") {
  Matrix<double> x = Matrix<double>::Identity(3, 3);
  const auto text = bos::serialize_bundle(sample_bundle(bos::Method::NB, x, {0, 1, 2}));
  auto doc = nlohmann::json::parse(text);
  doc["format_version"] = 2;
  CHECK(error_kind([&] { bos::parse_bundle(doc.dump()); }) == ErrorKind::VersionMismatch);
  CHECK(error_kind([&] { bos::parse_bundle(text.substr(0, text.size() / 2)); }) == ErrorKind::CorruptBundle);
  doc = nlohmann::json::parse(text);
  doc["model"].erase("feature_log_prob");
  CHECK(error_kind([&] { bos::parse_bundle(doc.dump()); }) == ErrorKind::CorruptBundle);
  doc = nlohmann::json::parse(text);
  doc["scheme"]["labels"] = {"A", "B"};
  CHECK(error_kind([&] { bos::parse_bundle(doc.dump()); }) == ErrorKind::CorruptBundle);
}

TEST_CASE("text featurizer survives a round trip") {
  bos::ModelBundle b;
  b.scheme = bos::LabelScheme::binary();
  b.featurizer = bos::TextFeaturizer{{bos::Vocabulary({"b", "a", "ഹ"}), bos::Vector<double>::Constant(3, 1.25)}};
  b.model = bos::train(Matrix<double>::Identity(2, 3), std::vector<int>{0, 1}, 2, bos::TrainConfig{});
  const auto back = bos::parse_bundle(bos::serialize_bundle(b));
  const auto& tf = std::get<bos::TextFeaturizer>(back.featurizer);
  CHECK(tf.tfidf.vocabulary.terms() == std::vector<std::string>{"a", "b", "ഹ"});
  CHECK(tf.tfidf.idf == bos::Vector<double>::Constant(3, 1.25));
}

TEST_CASE("run config json") {
  bos::RunConfig cfg;
  cfg.manifest_path = "/data/m.csv";
  cfg.task = bos::Task::Multiclass;
  cfg.method = bos::Method::RF;
  cfg.train.rf_max_depth = 4;
  cfg.audio.mel.n_mels = 40;
  cfg.set_seed(12);
  const auto j = bos::to_json(cfg);
  const auto back = bos::run_config_from_json(j);
  CHECK(bos::to_json(back) == j);
  CHECK(back.split.seed == 12);
  CHECK(back.train.rf_max_depth == 4);
  const auto snap = bos::to_json(cfg, true);
  CHECK_FALSE(snap.contains("manifest"));
  CHECK_FALSE(snap.contains("output_dir"));

  const auto partial = bos::run_config_from_json(nlohmann::json::parse(R"({"method":"nb","audio":{"n_mels":20}})"));
  CHECK(partial.method == bos::Method::NB);
  CHECK(partial.audio.mel.n_mels == 20);
  CHECK(partial.audio.stft.frame_length == 512);
  CHECK(error_kind([] { bos::run_config_from_json(nlohmann::json::parse(R"({"method":"knn"})")); }) ==
        ErrorKind::InvalidArgument);
  CHECK(error_kind([] { bos::run_config_from_json(nlohmann::json::parse(R"({"seed":"x"})")); }) ==
        ErrorKind::InvalidArgument);
}
