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

// Writes demo corpora: tones/, text/ and one directory per language.

#include "bos/synthetic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic corpora"};
  std::string dir = "synthetic";
  std::uint64_t seed = 7;
  app.add_option("dir", dir, "Output directory");
  app.add_option("--seed", seed, "Generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    const std::filesystem::path root = dir;
    bos::synthetic::ToneCorpusSpec tones;
    tones.seed = seed;
    std::cout << bos::synthetic::write_tone_corpus(root / "tones", tones).string() << "\n";

    bos::synthetic::TextCorpusSpec text;
    text.seed = seed;
    std::filesystem::create_directories(root / "text");
    std::ofstream(root / "text" / "manifest.csv", std::ios::binary)
        << bos::format_manifest(bos::synthetic::text_corpus(text));
    std::cout << (root / "text" / "manifest.csv").string() << "\n";

    bos::synthetic::LanguageCorpusSpec lang;
    lang.seed = seed;
    for (const auto& [name, path] : bos::synthetic::write_language_corpora(root / "languages", lang)) {
      std::cout << name << "=" << path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
