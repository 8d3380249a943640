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

// Generated corpora with known structure, for tests and demos.

#pragma once

#include "bos/corpus.hpp"
#include "bos/wav.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace bos::synthetic {

// A sine tone at a frequency drawn from [lo_hz, hi_hz] plus uniform noise.
Waveform tone(double lo_hz, double hi_hz, double seconds, int sample_rate_hz, double noise, Rng& rng);

struct ToneCorpusSpec {
  std::size_t clips = 200;
  double seconds = 1.0;
  int sample_rate_hz = 16000;
  double noise = 0.05;
  std::uint64_t seed = 7;
};

// Two classes, H tones in 300-700 Hz and N tones in 2-3 kHz, alternating.
// Writes clips/*.wav and manifest.csv under dir; returns the manifest path.
std::filesystem::path write_tone_corpus(const std::filesystem::path& dir, const ToneCorpusSpec& spec = {});

struct TextCorpusSpec {
  std::size_t docs = 200;
  std::size_t terms_per_class = 20;
  std::size_t words_per_doc = 12;
  std::uint64_t seed = 11;
};

// Two classes with disjoint vocabularies, H and N alternating.
std::vector<Utterance> text_corpus(const TextCorpusSpec& spec = {});

struct LanguageCorpusSpec {
  std::size_t per_class = 8;  // per multiclass label
  double seconds = 0.25;
  int sample_rate_hz = 16000;
  double noise = 0.05;
  std::size_t words_per_doc = 8;
  std::uint64_t seed = 3;
};

// Utterances carrying text, audio and both labels. Each multiclass label
// C, N, P, R, G owns a tone band and a set of words in the language's
// script; the binary label is N for N and H otherwise.
std::filesystem::path write_language_corpus(const std::filesystem::path& dir, const Language& language,
                                            const LanguageCorpusSpec& spec = {});

// One corpus per rubric language under dir/<language>; returns
// language -> manifest path.
std::map<std::string, std::string> write_language_corpora(const std::filesystem::path& dir,
                                                          const LanguageCorpusSpec& spec = {});

}  // namespace bos::synthetic
