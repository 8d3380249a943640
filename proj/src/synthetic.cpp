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

#include "bos/synthetic.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <numbers>

namespace bos::synthetic {

namespace fs = std::filesystem;

namespace {

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Ten consonant letters per script.
std::array<char32_t, 10> consonants(const Language& language) {
  switch (language.kind) {
    case Language::Kind::Malayalam:
      return {0x0D15, 0x0D16, 0x0D17, 0x0D18, 0x0D19, 0x0D1A, 0x0D1B, 0x0D1C, 0x0D1D, 0x0D1E};
    case Language::Kind::Tamil:
      return {0x0B95, 0x0B99, 0x0B9A, 0x0B9E, 0x0B9F, 0x0BA3, 0x0BA4, 0x0BA8, 0x0BAA, 0x0BAE};
    case Language::Kind::Telugu:
      return {0x0C15, 0x0C16, 0x0C17, 0x0C18, 0x0C19, 0x0C1A, 0x0C1B, 0x0C1C, 0x0C1D, 0x0C1E};
    case Language::Kind::Other:
      break;
  }
  return {U'b', U'c', U'd', U'f', U'g', U'h', U'j', U'k', U'l', U'm'};
}

std::string write_clip(const fs::path& dir, const std::string& id, const Waveform& wave) {
  const std::string rel = "clips/" + id + ".wav";
  fs::create_directories(dir / "clips");
  write_wav(dir / rel, wave, WavEncoding::Pcm16);
  return rel;
}

void write_manifest(const fs::path& path, const std::vector<Utterance>& rows) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  out << format_manifest(rows);
}

std::string pad3(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

}  // namespace

Waveform tone(double lo_hz, double hi_hz, double seconds, int sample_rate_hz, double noise, Rng& rng) {
  const double f = lo_hz + (hi_hz - lo_hz) * uniform_unit(rng);
  const double phase = 2.0 * std::numbers::pi * uniform_unit(rng);
  const auto n = static_cast<Index>(std::llround(seconds * sample_rate_hz));
  Waveform w{Vector<double>(n), sample_rate_hz};
  for (Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / sample_rate_hz;
    w.samples[i] = 0.5 * std::sin(2.0 * std::numbers::pi * f * t + phase) + noise * (2.0 * uniform_unit(rng) - 1.0);
  }
  return w;
}

fs::path write_tone_corpus(const fs::path& dir, const ToneCorpusSpec& spec) {
  Rng rng(derive_seed(spec.seed, 0));
  std::vector<Utterance> rows;
  for (std::size_t i = 0; i < spec.clips; ++i) {
    const bool h = i % 2 == 0;
    Utterance u;
    u.id = "tone" + pad3(i);
    u.subject_id = "s" + std::to_string(i % 10);
    u.gender = i % 3 == 0 ? Gender::F : Gender::M;
    u.source = "synthetic";
    u.utterance_no = static_cast<std::int64_t>(i);
    const Waveform w = h ? tone(300, 700, spec.seconds, spec.sample_rate_hz, spec.noise, rng)
                         : tone(2000, 3000, spec.seconds, spec.sample_rate_hz, spec.noise, rng);
    u.audio_path = write_clip(dir, u.id, w);
    u.binary_label = h ? "H" : "N";
    rows.push_back(std::move(u));
  }
  const fs::path manifest = dir / "manifest.csv";
  write_manifest(manifest, rows);
  return manifest;
}

std::vector<Utterance> text_corpus(const TextCorpusSpec& spec) {
  Rng rng(derive_seed(spec.seed, 0));
  std::vector<Utterance> rows;
  for (std::size_t i = 0; i < spec.docs; ++i) {
    const bool h = i % 2 == 0;
    Utterance u;
    u.id = "doc" + pad3(i);
    u.subject_id = "s" + std::to_string(i % 10);
    u.source = "synthetic";
    u.utterance_no = static_cast<std::int64_t>(i);
    for (std::size_t w = 0; w < spec.words_per_doc; ++w) {
      if (w) u.text += ' ';
      u.text += (h ? "hx" : "nx") + std::to_string(uniform_index(rng, spec.terms_per_class));
    }
    u.binary_label = h ? "H" : "N";
    rows.push_back(std::move(u));
  }
  return rows;
}

fs::path write_language_corpus(const fs::path& dir, const Language& language, const LanguageCorpusSpec& spec) {
  static constexpr std::array<const char*, 5> kCodes{"C", "N", "P", "R", "G"};
  static constexpr std::array<double, 5> kBandLo{250, 800, 1600, 2800, 4400};
  const auto letters = consonants(language);
  Rng rng(derive_seed(spec.seed, fnv1a64(language.name)));

  std::vector<Utterance> rows;
  const std::size_t n = spec.per_class * kCodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i % kCodes.size();
    Utterance u;
    u.id = language.name.substr(0, 2) + pad3(i);
    u.subject_id = "s" + std::to_string(i % 7);
    u.gender = i % 2 ? Gender::F : Gender::M;
    u.source = "synthetic";
    u.utterance_no = static_cast<std::int64_t>(i / 7);
    for (std::size_t w = 0; w < spec.words_per_doc; ++w) {
      if (w) u.text += ' ';
      append_utf8(u.text, letters[c]);
      append_utf8(u.text, letters[uniform_index(rng, letters.size())]);
    }
    const Waveform wave =
        tone(kBandLo[c], kBandLo[c] + 200, spec.seconds, spec.sample_rate_hz, spec.noise, rng);
    u.audio_path = write_clip(dir, u.id, wave);
    u.multiclass_label = kCodes[c];
    u.binary_label = c == 1 ? "N" : "H";
    rows.push_back(std::move(u));
  }
  const fs::path manifest = dir / "manifest.csv";
  write_manifest(manifest, rows);
  return manifest;
}

std::map<std::string, std::string> write_language_corpora(const fs::path& dir, const LanguageCorpusSpec& spec) {
  std::map<std::string, std::string> out;
  for (const auto& language : Language::rubric()) {
    out[language.name] = write_language_corpus(dir / language.name, language, spec).string();
  }
  return out;
}

}  // namespace bos::synthetic
