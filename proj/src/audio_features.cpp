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

#include "bos/audio_features.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

namespace bos {

void validate(const StftConfig& cfg) {
  if (cfg.frame_length < 2 || !std::has_single_bit(static_cast<unsigned>(cfg.frame_length))) {
    throw Error(ErrorKind::InvalidArgument, "frame_length must be a power of two >= 2");
  }
  if (cfg.hop_length < 1 || cfg.hop_length > cfg.frame_length) {
    throw Error(ErrorKind::InvalidArgument, "hop_length must lie in [1, frame_length]");
  }
}

Waveform resample_linear(const Waveform& wave, int target_rate_hz) {
  if (target_rate_hz <= 0 || wave.sample_rate_hz <= 0) {
    throw Error(ErrorKind::InvalidArgument, "sample rates must be positive");
  }
  if (wave.sample_rate_hz == target_rate_hz || wave.samples.size() == 0) {
    return {wave.samples, target_rate_hz};
  }
  const Index n = wave.samples.size();
  const double step = static_cast<double>(wave.sample_rate_hz) / target_rate_hz;
  const auto n_out = static_cast<Index>(std::floor(static_cast<double>(n - 1) / step)) + 1;
  Waveform out{Vector<double>(n_out), target_rate_hz};
  for (Index i = 0; i < n_out; ++i) {
    const double pos = static_cast<double>(i) * step;
    const auto left = std::min(static_cast<Index>(pos), n - 1);
    const Index right = std::min(left + 1, n - 1);
    const double frac = pos - static_cast<double>(left);
    out.samples[i] = (1.0 - frac) * wave.samples[left] + frac * wave.samples[right];
  }
  return out;
}

MelFilterbank filterbank_for(const AudioConfig& cfg) {
  return build_mel_filterbank<double>(cfg.sample_rate_hz, cfg.stft.frame_length, cfg.mel.n_mels,
                                      cfg.mel.fmin_hz, cfg.mel.fmax_hz);
}

Spectrogram log_mel_spectrogram(const Waveform& wave, const AudioConfig& cfg, const MelFilterbank& fb) {
  Waveform w = resample_linear(wave, cfg.sample_rate_hz);
  if (w.samples.size() < cfg.stft.frame_length) {
    const Index have = w.samples.size();
    w.samples.conservativeResize(cfg.stft.frame_length);
    w.samples.tail(cfg.stft.frame_length - have).setZero();
  }
  return power_to_db(mel_spectrogram(stft(w, cfg.stft), fb), cfg.db);
}

namespace {

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(const std::string& in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  return v;
}

std::string cache_key(const std::string& path, const AudioConfig& cfg) {
  std::ostringstream key;
  key.precision(17);
  key << path << '|' << cfg.sample_rate_hz << '|' << cfg.stft.frame_length << '|'
      << cfg.stft.hop_length << '|' << static_cast<int>(cfg.stft.window) << '|' << cfg.mel.n_mels
      << '|' << cfg.mel.fmin_hz << '|' << cfg.mel.fmax_hz << '|' << cfg.db.amin << '|'
      << cfg.db.top_db;
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.bos",
                static_cast<unsigned long long>(fnv1a64(key.str())));
  return name;
}

}  // namespace

std::vector<Spectrogram> extract_log_mel(std::span<const std::string> paths, const AudioConfig& cfg,
                                         std::size_t threads,
                                         const std::filesystem::path& cache_dir) {
  const MelFilterbank fb = filterbank_for(cfg);
  if (!cache_dir.empty()) std::filesystem::create_directories(cache_dir);

  std::vector<Spectrogram> out(paths.size());
  parallel_for(paths.size(), threads, [&](std::size_t i) {
    std::filesystem::path cached;
    if (!cache_dir.empty()) {
      cached = cache_dir / cache_key(paths[i], cfg);
      if (std::filesystem::exists(cached)) {
        out[i] = {read_feature_cache(cached), SpectrogramAxis::MelDecibel};
        return;
      }
    }
    out[i] = log_mel_spectrogram(decode_wav(std::filesystem::path(paths[i])), cfg, fb);
    if (!cached.empty()) write_feature_cache(cached, out[i].values);
  });
  return out;
}

FeatureMatrix stack_flattened(std::span<const Spectrogram> specs, Index target_frames) {
  FeatureMatrix out{Matrix<double>(0, 0), Provenance::Audio};
  if (specs.empty()) return out;
  const Index bands = specs.front().rows();
  out.values.resize(static_cast<Index>(specs.size()), bands * target_frames);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].rows() != bands) {
      throw Error(ErrorKind::ShapeMismatch, "spectrograms differ in band count");
    }
    out.values.row(static_cast<Index>(i)) = flatten(pad_to_shape(specs[i], target_frames)).values.transpose();
  }
  return out;
}

void write_feature_cache(const std::filesystem::path& path, const Matrix<double>& m) {
  std::string bytes = "BOS1";
  put_le(bytes, static_cast<std::uint32_t>(m.rows()), 4);
  put_le(bytes, static_cast<std::uint32_t>(m.cols()), 4);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) put_le(bytes, std::bit_cast<std::uint64_t>(m(r, c)), 8);
  }
  // Write-then-rename so concurrent readers never see a partial file.
  const auto tmp =
      path.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  std::filesystem::rename(tmp, path);
}

Matrix<double> read_feature_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableFile, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || bytes.compare(0, 4, "BOS1") != 0) {
    throw Error(ErrorKind::CorruptHeader, path.string() + ": not a BOS1 feature cache");
  }
  const auto rows = static_cast<Index>(get_le(bytes, 4, 4));
  const auto cols = static_cast<Index>(get_le(bytes, 8, 4));
  if (bytes.size() != 12 + static_cast<std::size_t>(rows * cols) * 8) {
    throw Error(ErrorKind::CorruptHeader, path.string() + ": truncated feature cache");
  }
  Matrix<double> m(rows, cols);
  std::size_t pos = 12;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c, pos += 8) m(r, c) = std::bit_cast<double>(get_le(bytes, pos, 8));
  }
  return m;
}

}  // namespace bos
