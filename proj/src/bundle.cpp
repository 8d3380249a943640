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

#include "bos/csv.hpp"

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>

#include <bit>
#include <fstream>

namespace bos {

using nlohmann::json;

namespace {

[[noreturn]] void corrupt(const std::string& what) {
  throw Error(ErrorKind::CorruptBundle, "model bundle: " + what);
}

std::string_view to_string(Window w) { return w == Window::Hann ? "hann" : "rectangular"; }

Window parse_window(const std::string& s) {
  if (s == "hann") return Window::Hann;
  if (s == "rectangular") return Window::Rectangular;
  throw Error(ErrorKind::InvalidArgument, "unknown window '" + s + "' (hann, rectangular)");
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

template <typename T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
  if (auto it = j.find(key); it != j.end()) {
    if (it->is_null()) {
      out.reset();
    } else {
      out = it->get<T>();
    }
  }
}

json optional_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json vector_to_json(const Vector<double>& v) {
  return json{{"size", v.size()}, {"f64le", encode_f64_block({v.data(), static_cast<std::size_t>(v.size())})}};
}

Vector<double> vector_from_json(const json& j) {
  const auto values = decode_f64_block(j.at("f64le").get<std::string>());
  if (values.size() != j.at("size").get<std::size_t>()) corrupt("vector length mismatch");
  return Eigen::Map<const Vector<double>>(values.data(), static_cast<Index>(values.size()));
}

json scheme_to_json(const LabelScheme& s) {
  return json{{"kind", to_string(s.kind())}, {"labels", s.labels()}};
}

LabelScheme scheme_from_json(const json& j) {
  return LabelScheme(parse_task(j.at("kind").get<std::string>()), j.at("labels").get<std::vector<std::string>>());
}

}  // namespace

LabelScheme RunConfig::scheme() const {
  return task == Task::Binary ? LabelScheme::binary() : LabelScheme::multiclass(multiclass_labels);
}

void RunConfig::set_seed(std::uint64_t seed) {
  split.seed = seed;
  train.seed = seed;
}

json to_json(const AudioConfig& cfg) {
  return json{{"sample_rate_hz", cfg.sample_rate_hz},
              {"frame_length", cfg.stft.frame_length},
              {"hop_length", cfg.stft.hop_length},
              {"window", to_string(cfg.stft.window)},
              {"n_mels", cfg.mel.n_mels},
              {"fmin_hz", cfg.mel.fmin_hz},
              {"fmax_hz", cfg.mel.fmax_hz},
              {"amin", cfg.db.amin},
              {"top_db", cfg.db.top_db},
              {"normalize", cfg.normalize}};
}

AudioConfig audio_config_from_json(const json& j, AudioConfig base) {
  read_opt(j, "sample_rate_hz", base.sample_rate_hz);
  read_opt(j, "frame_length", base.stft.frame_length);
  read_opt(j, "hop_length", base.stft.hop_length);
  if (auto it = j.find("window"); it != j.end()) base.stft.window = parse_window(it->get<std::string>());
  read_opt(j, "n_mels", base.mel.n_mels);
  read_opt(j, "fmin_hz", base.mel.fmin_hz);
  read_opt(j, "fmax_hz", base.mel.fmax_hz);
  read_opt(j, "amin", base.db.amin);
  read_opt(j, "top_db", base.db.top_db);
  read_opt(j, "normalize", base.normalize);
  return base;
}

json to_json(const RunConfig& cfg, bool snapshot) {
  json j{
      {"task", to_string(cfg.task)},
      {"modality", to_string(cfg.modality)},
      {"method", to_string(cfg.method)},
      {"language", cfg.language.name},
      {"multiclass_labels", cfg.multiclass_labels},
      {"split",
       {{"train_fraction", cfg.split.train_fraction}, {"seed", cfg.split.seed}, {"stratified", cfg.split.stratified}}},
      {"audio", to_json(cfg.audio)},
      {"train",
       {{"seed", cfg.train.seed},
        {"nb_alpha", cfg.train.nb_alpha},
        {"l2_lambda", cfg.train.l2_lambda},
        {"max_epochs", cfg.train.max_epochs},
        {"learning_rate", cfg.train.learning_rate},
        {"tolerance", cfg.train.tolerance},
        {"rf_trees", cfg.train.rf_trees},
        {"rf_max_depth", optional_json(cfg.train.rf_max_depth)},
        {"rf_features_per_split", optional_json(cfg.train.rf_features_per_split)},
        {"rf_bootstrap", cfg.train.rf_bootstrap}}},
  };
  if (!snapshot) {
    j["manifest"] = cfg.manifest_path;
    j["manifests"] = cfg.manifests;
    j["output_dir"] = cfg.output_dir;
    j["cache_dir"] = cfg.cache_dir;
  }
  return j;
}

RunConfig run_config_from_json(const json& j, RunConfig cfg) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "config must be a JSON object");
  try {
    read_opt(j, "manifest", cfg.manifest_path);
    read_opt(j, "manifests", cfg.manifests);
    if (auto it = j.find("language"); it != j.end()) cfg.language = Language::parse(it->get<std::string>());
    if (auto it = j.find("task"); it != j.end()) cfg.task = parse_task(it->get<std::string>());
    if (auto it = j.find("modality"); it != j.end()) cfg.modality = parse_modality(it->get<std::string>());
    if (auto it = j.find("method"); it != j.end()) cfg.method = parse_method(it->get<std::string>());
    read_opt(j, "multiclass_labels", cfg.multiclass_labels);
    read_opt(j, "output_dir", cfg.output_dir);
    read_opt(j, "cache_dir", cfg.cache_dir);
    if (auto it = j.find("seed"); it != j.end()) cfg.set_seed(it->get<std::uint64_t>());
    if (auto s = j.find("split"); s != j.end()) {
      read_opt(*s, "train_fraction", cfg.split.train_fraction);
      read_opt(*s, "seed", cfg.split.seed);
      read_opt(*s, "stratified", cfg.split.stratified);
    }
    if (auto a = j.find("audio"); a != j.end()) cfg.audio = audio_config_from_json(*a, cfg.audio);
    if (auto t = j.find("train"); t != j.end()) {
      read_opt(*t, "seed", cfg.train.seed);
      read_opt(*t, "nb_alpha", cfg.train.nb_alpha);
      read_opt(*t, "l2_lambda", cfg.train.l2_lambda);
      read_opt(*t, "max_epochs", cfg.train.max_epochs);
      read_opt(*t, "learning_rate", cfg.train.learning_rate);
      read_opt(*t, "tolerance", cfg.train.tolerance);
      read_opt(*t, "rf_trees", cfg.train.rf_trees);
      read_opt(*t, "rf_max_depth", cfg.train.rf_max_depth);
      read_opt(*t, "rf_features_per_split", cfg.train.rf_features_per_split);
      read_opt(*t, "rf_bootstrap", cfg.train.rf_bootstrap);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("config: ") + e.what());
  }
  cfg.train.method = cfg.method;
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  const auto text = csv::read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, path.string() + ": " + e.what());
  }
  return run_config_from_json(j, std::move(base));
}

std::string encode_f64_block(std::span<const double> values) {
  using namespace boost::archive::iterators;
  using Encoder = base64_from_binary<transform_width<std::string::const_iterator, 6, 8>>;
  std::string bytes;
  bytes.reserve(values.size() * 8);
  for (double v : values) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
  std::string out(Encoder(bytes.cbegin()), Encoder(bytes.cend()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::vector<double> decode_f64_block(std::string_view base64) {
  using namespace boost::archive::iterators;
  using Decoder = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
  std::string text(base64);
  std::size_t padding = 0;
  while (!text.empty() && text.back() == '=') {
    text.pop_back();
    ++padding;
  }
  if (padding > 2) corrupt("bad base64 padding");
  std::string bytes;
  try {
    bytes.assign(Decoder(text.cbegin()), Decoder(text.cend()));
  } catch (const std::exception&) {
    corrupt("invalid base64 data");
  }
  if (bytes.size() % 8 != 0) corrupt("float64 block length is not a multiple of 8");
  std::vector<double> out(bytes.size() / 8);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[k * 8 + i])) << (8 * i);
    }
    out[k] = std::bit_cast<double>(bits);
  }
  return out;
}

json matrix_to_json(const Matrix<double>& m) {
  const RowMajorMatrix<double> rm = m;
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"f64le", encode_f64_block({rm.data(), static_cast<std::size_t>(rm.size())})}};
}

Matrix<double> matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  const auto values = decode_f64_block(j.at("f64le").get<std::string>());
  if (rows < 0 || cols < 0 || values.size() != static_cast<std::size_t>(rows * cols)) {
    corrupt("matrix shape does not match its data");
  }
  return Eigen::Map<const RowMajorMatrix<double>>(values.data(), rows, cols);
}

json model_to_json(const TrainedModel& model) {
  json j{{"method", to_string(model.method())}, {"n_classes", model.n_classes}, {"n_features", model.n_features}};
  if (const auto* nb = std::get_if<NBModel>(&model.model)) {
    j["class_log_prior"] = vector_to_json(nb->class_log_prior);
    j["feature_log_prob"] = matrix_to_json(nb->feature_log_prob);
  } else if (const auto* lm = std::get_if<LinearModel>(&model.model)) {
    j["weights"] = matrix_to_json(lm->weights);
    j["bias"] = vector_to_json(lm->bias);
  } else {
    const auto& forest = std::get<ForestModel>(model.model);
    json trees = json::array();
    for (const auto& tree : forest.trees) {
      std::vector<int> feature;
      std::vector<int> left;
      std::vector<int> right;
      Vector<double> threshold(static_cast<Index>(tree.nodes.size()));
      Matrix<double> hist(static_cast<Index>(tree.nodes.size()), model.n_classes);
      for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        feature.push_back(n.feature);
        left.push_back(n.left);
        right.push_back(n.right);
        threshold[static_cast<Index>(i)] = n.threshold;
        hist.row(static_cast<Index>(i)) = n.histogram.transpose();
      }
      trees.push_back(json{{"feature", feature},
                           {"left", left},
                           {"right", right},
                           {"threshold", vector_to_json(threshold)},
                           {"histogram", matrix_to_json(hist)}});
    }
    j["trees"] = std::move(trees);
  }
  return j;
}

TrainedModel model_from_json(const json& j) {
  TrainedModel model;
  model.n_classes = j.at("n_classes").get<int>();
  model.n_features = j.at("n_features").get<Index>();
  const Method method = parse_method(j.at("method").get<std::string>());
  switch (method) {
    case Method::NB: {
      NBModel nb{vector_from_json(j.at("class_log_prior")), matrix_from_json(j.at("feature_log_prob"))};
      if (nb.class_log_prior.size() != model.n_classes || nb.feature_log_prob.rows() != model.n_classes ||
          nb.feature_log_prob.cols() != model.n_features) {
        corrupt("naive Bayes parameter shapes");
      }
      model.model = std::move(nb);
      break;
    }
    case Method::SVM:
    case Method::LR: {
      LinearModel lm{matrix_from_json(j.at("weights")), vector_from_json(j.at("bias")),
                     method == Method::SVM ? LinearLoss::Hinge : LinearLoss::Logistic};
      if (lm.weights.rows() != model.n_classes || lm.weights.cols() != model.n_features ||
          lm.bias.size() != model.n_classes) {
        corrupt("linear parameter shapes");
      }
      model.model = std::move(lm);
      break;
    }
    case Method::RF: {
      ForestModel forest;
      for (const auto& t : j.at("trees")) {
        const auto feature = t.at("feature").get<std::vector<int>>();
        const auto left = t.at("left").get<std::vector<int>>();
        const auto right = t.at("right").get<std::vector<int>>();
        const auto threshold = vector_from_json(t.at("threshold"));
        const auto hist = matrix_from_json(t.at("histogram"));
        const auto n = feature.size();
        if (n == 0 || left.size() != n || right.size() != n || static_cast<std::size_t>(threshold.size()) != n ||
            static_cast<std::size_t>(hist.rows()) != n || hist.cols() != model.n_classes) {
          corrupt("tree arrays disagree in length");
        }
        DecisionTree tree;
        tree.nodes.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          auto& node = tree.nodes[i];
          node.feature = feature[i];
          node.left = left[i];
          node.right = right[i];
          node.threshold = threshold[static_cast<Index>(i)];
          node.histogram = hist.row(static_cast<Index>(i)).transpose();
          if (!node.is_leaf() && (node.feature >= model.n_features || node.left <= static_cast<int>(i) ||
                                  node.right <= static_cast<int>(i) || static_cast<std::size_t>(node.left) >= n ||
                                  static_cast<std::size_t>(node.right) >= n)) {
            corrupt("tree node links out of range");
          }
        }
        forest.trees.push_back(std::move(tree));
      }
      if (forest.trees.empty()) corrupt("forest has no trees");
      model.model = std::move(forest);
      break;
    }
  }
  return model;
}

std::string serialize_bundle(const ModelBundle& bundle) {
  json featurizer;
  if (const auto* text = std::get_if<TextFeaturizer>(&bundle.featurizer)) {
    featurizer = json{{"kind", "text"},
                      {"vocabulary", text->tfidf.vocabulary.terms()},
                      {"idf", vector_to_json(text->tfidf.idf)}};
  } else {
    const auto& speech = std::get<SpeechFeaturizer>(bundle.featurizer);
    featurizer = json{{"kind", "speech"}, {"audio", to_json(speech.audio)}, {"pad_frames", speech.pad_frames}};
    featurizer["scaler"] = speech.scaler ? json{{"min", vector_to_json(speech.scaler->mins())},
                                                {"max", vector_to_json(speech.scaler->maxs())}}
                                         : json(nullptr);
  }
  const json doc{{"format_version", bundle.format_version},
                 {"config", bundle.config},
                 {"scheme", scheme_to_json(bundle.scheme)},
                 {"featurizer", std::move(featurizer)},
                 {"model", model_to_json(bundle.model)}};
  return doc.dump(1) + "\n";
}

ModelBundle parse_bundle(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    corrupt(e.what());
  }
  try {
    ModelBundle b;
    b.format_version = doc.at("format_version").get<int>();
    if (b.format_version != kBundleFormatVersion) {
      throw Error(ErrorKind::VersionMismatch, "bundle format_version " + std::to_string(b.format_version) +
                                                  ", this build reads " + std::to_string(kBundleFormatVersion));
    }
    b.config = doc.at("config");
    b.scheme = scheme_from_json(doc.at("scheme"));
    const auto& f = doc.at("featurizer");
    const auto kind = f.at("kind").get<std::string>();
    if (kind == "text") {
      TextFeaturizer tf{{Vocabulary(f.at("vocabulary").get<std::vector<std::string>>()), vector_from_json(f.at("idf"))}};
      if (tf.tfidf.idf.size() != static_cast<Index>(tf.tfidf.vocabulary.size())) corrupt("idf length");
      b.featurizer = std::move(tf);
    } else if (kind == "speech") {
      SpeechFeaturizer sf{audio_config_from_json(f.at("audio")), f.at("pad_frames").get<Index>(), std::nullopt};
      if (const auto& s = f.at("scaler"); !s.is_null()) {
        sf.scaler = MinMaxScaler<double>(vector_from_json(s.at("min")), vector_from_json(s.at("max")));
      }
      b.featurizer = std::move(sf);
    } else {
      corrupt("unknown featurizer kind '" + kind + "'");
    }
    b.model = model_from_json(doc.at("model"));
    if (b.model.n_classes != b.scheme.size()) corrupt("model class count differs from the label scheme");
    return b;
  } catch (const json::exception& e) {
    corrupt(e.what());
  }
}

void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  out << serialize_bundle(bundle);
}

ModelBundle load_bundle(const std::filesystem::path& path) { return parse_bundle(csv::read_file(path)); }

}  // namespace bos
