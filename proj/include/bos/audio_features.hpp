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

// Speech path: waveform -> power spectrogram -> Mel power -> decibels ->
// fixed-width padding -> flat feature row -> per-column [0, 1] scaling.
//
// The numeric kernels are templates over the scalar type so that float and
// double pipelines share one implementation; the file-level drivers at the
// bottom are double only.

#pragma once

#include "bos/common.hpp"
#include "bos/wav.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace bos {

enum class Window { Hann, Rectangular };

struct StftConfig {
  int frame_length = 512;  // power of two
  int hop_length = 256;    // 0 < hop <= frame_length
  Window window = Window::Hann;
};

void validate(const StftConfig& cfg);

enum class SpectrogramAxis { LinearPower, MelPower, MelDecibel };

// values(row, frame): rows are frequency bins or Mel bands, columns are frames.
template <typename Scalar>
struct BasicSpectrogram {
  Matrix<Scalar> values;
  SpectrogramAxis axis = SpectrogramAxis::LinearPower;

  Index rows() const { return values.rows(); }
  Index frames() const { return values.cols(); }
};

using Spectrogram = BasicSpectrogram<double>;

template <typename Scalar>
struct BasicMelFilterbank {
  int n_mels = 0;
  double fmin_hz = 0.0;
  double fmax_hz = 0.0;
  Matrix<Scalar> weights;  // n_mels x (frame_length / 2 + 1)
};

using MelFilterbank = BasicMelFilterbank<double>;

template <typename Scalar>
struct BasicFeatureVector {
  Vector<Scalar> values;
  Provenance provenance = Provenance::Audio;
};

using FeatureVector = BasicFeatureVector<double>;

// Periodic window of length n (the DFT-even form used for spectral analysis).
template <typename Scalar>
Vector<Scalar> make_window(Window window, int n) {
  Vector<Scalar> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = window == Window::Rectangular
               ? Scalar(1)
               : Scalar(0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n));
  }
  return w;
}

// One-sided power spectrogram: |DFT(window * frame_t)[r]|^2 for
// r in [0, frame_length / 2]. Throws SignalTooShort.
template <typename Scalar>
BasicSpectrogram<Scalar> stft(const BasicWaveform<Scalar>& wave, const StftConfig& cfg) {
  validate(cfg);
  const Index n = wave.samples.size();
  const Index len = cfg.frame_length;
  if (n < len) {
    throw Error(ErrorKind::SignalTooShort, "signal has " + std::to_string(n) +
                                               " samples, frame needs " + std::to_string(len));
  }
  const Index frames = 1 + (n - len) / cfg.hop_length;
  const Index bins = len / 2 + 1;
  const Vector<Scalar> window = make_window<Scalar>(cfg.window, cfg.frame_length);

  BasicSpectrogram<Scalar> out{Matrix<Scalar>(bins, frames), SpectrogramAxis::LinearPower};
  Eigen::FFT<Scalar> fft;
  std::vector<Scalar> frame(static_cast<std::size_t>(len));
  std::vector<std::complex<Scalar>> spectrum;
  for (Index t = 0; t < frames; ++t) {
    const Index start = t * cfg.hop_length;
    for (Index i = 0; i < len; ++i) {
      frame[static_cast<std::size_t>(i)] = window[i] * wave.samples[start + i];
    }
    fft.fwd(spectrum, frame);
    for (Index r = 0; r < bins; ++r) out.values(r, t) = std::norm(spectrum[static_cast<std::size_t>(r)]);
  }
  return out;
}

// HTK Mel scale, m = 2595 log10(1 + f / 700). Throws NegativeFrequency.
template <typename Scalar>
Scalar hz_to_mel(Scalar hz) {
  if (!(hz >= Scalar(0))) throw Error(ErrorKind::NegativeFrequency, "frequency must be >= 0");
  return Scalar(2595) * std::log1p(hz / Scalar(700)) / std::numbers::ln10_v<Scalar>;
}

template <typename Scalar>
Scalar mel_to_hz(Scalar mel) {
  if (!(mel >= Scalar(0))) throw Error(ErrorKind::NegativeFrequency, "mel value must be >= 0");
  return Scalar(700) * std::expm1(mel * std::numbers::ln10_v<Scalar> / Scalar(2595));
}

// Centre frequency in Hz of FFT bin k.
inline double bin_frequency(Index k, int sample_rate_hz, int frame_length) {
  return static_cast<double>(k) * sample_rate_hz / frame_length;
}

// Triangular filters on n_mels + 2 breakpoints equally spaced in Mel between
// fmin and fmax. Filter i rises from breakpoint i to i + 1 and falls to i + 2.
// Throws InvalidRange, NyquistExceeded, NegativeFrequency, InvalidArgument.
template <typename Scalar>
BasicMelFilterbank<Scalar> build_mel_filterbank(int sample_rate_hz, int frame_length, int n_mels,
                                                double fmin_hz, double fmax_hz) {
  if (sample_rate_hz <= 0 || frame_length < 2 || n_mels < 1) {
    throw Error(ErrorKind::InvalidArgument, "filterbank needs sr > 0, frame >= 2, n_mels >= 1");
  }
  if (fmin_hz < 0.0) throw Error(ErrorKind::NegativeFrequency, "fmin must be >= 0");
  if (!(fmin_hz < fmax_hz)) throw Error(ErrorKind::InvalidRange, "fmin must be below fmax");
  if (fmax_hz > sample_rate_hz / 2.0) {
    throw Error(ErrorKind::NyquistExceeded, "fmax exceeds the Nyquist frequency");
  }

  const double mel_lo = hz_to_mel(fmin_hz);
  const double mel_hi = hz_to_mel(fmax_hz);
  std::vector<double> edges(static_cast<std::size_t>(n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_mels + 1));
  }
  edges.front() = fmin_hz;
  edges.back() = fmax_hz;

  const Index bins = frame_length / 2 + 1;
  BasicMelFilterbank<Scalar> fb{n_mels, fmin_hz, fmax_hz, Matrix<Scalar>::Zero(n_mels, bins)};
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges[static_cast<std::size_t>(m)];
    const double mid = edges[static_cast<std::size_t>(m) + 1];
    const double hi = edges[static_cast<std::size_t>(m) + 2];
    for (Index k = 0; k < bins; ++k) {
      const double f = bin_frequency(k, sample_rate_hz, frame_length);
      const double w = std::min((f - lo) / (mid - lo), (hi - f) / (hi - mid));
      if (w > 0.0) fb.weights(m, k) = static_cast<Scalar>(w);
    }
  }
  return fb;
}

template <typename Scalar>
BasicSpectrogram<Scalar> mel_spectrogram(const BasicSpectrogram<Scalar>& power,
                                         const BasicMelFilterbank<Scalar>& fb) {
  if (power.rows() != fb.weights.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "spectrogram has " + std::to_string(power.rows()) +
                                              " bins, filterbank expects " +
                                              std::to_string(fb.weights.cols()));
  }
  return {fb.weights * power.values, SpectrogramAxis::MelPower};
}

struct DbConfig {
  double amin = 1e-10;
  double top_db = 80.0;
};

// 10 log10(max(x, amin)) - 10 log10(max(ref, amin)) with ref the spectrogram
// maximum, then floored at (max_db - top_db).
template <typename Scalar>
BasicSpectrogram<Scalar> power_to_db(const BasicSpectrogram<Scalar>& power, const DbConfig& cfg = {}) {
  BasicSpectrogram<Scalar> out{power.values, SpectrogramAxis::MelDecibel};
  if (out.values.size() == 0) return out;
  const Scalar amin = static_cast<Scalar>(cfg.amin);
  const Scalar ref = std::max(power.values.maxCoeff(), amin);
  const Scalar ref_db = Scalar(10) * std::log10(ref);
  out.values = power.values.unaryExpr(
      [&](Scalar v) { return Scalar(10) * std::log10(std::max(v, amin)) - ref_db; });
  const Scalar floor = out.values.maxCoeff() - static_cast<Scalar>(cfg.top_db);
  out.values = out.values.cwiseMax(floor);
  return out;
}

// Right-pads with the spectrogram's minimum (its silence floor) or truncates
// trailing frames so that frames() == target_frames.
template <typename Scalar>
BasicSpectrogram<Scalar> pad_to_shape(const BasicSpectrogram<Scalar>& s, Index target_frames) {
  if (target_frames < 1) throw Error(ErrorKind::InvalidArgument, "target_frames must be >= 1");
  if (s.frames() == target_frames) return s;
  if (s.frames() > target_frames) {
    return {s.values.leftCols(target_frames), s.axis};
  }
  const Scalar fill = s.values.size() ? s.values.minCoeff() : Scalar(0);
  BasicSpectrogram<Scalar> out{Matrix<Scalar>::Constant(s.rows(), target_frames, fill), s.axis};
  out.values.leftCols(s.frames()) = s.values;
  return out;
}

// Row-major flattening: band 0 frames, then band 1 frames, ...
template <typename Scalar>
BasicFeatureVector<Scalar> flatten(const BasicSpectrogram<Scalar>& s) {
  const RowMajorMatrix<Scalar> rm = s.values;
  return {Eigen::Map<const Vector<Scalar>>(rm.data(), rm.size()), Provenance::Audio};
}

// Per-column min-max scaling fitted on training rows. Constant columns map to
// 0; transformed values outside the fitted range are clipped into [0, 1].
template <typename Scalar>
class MinMaxScaler {
 public:
  MinMaxScaler() = default;
  MinMaxScaler(Vector<Scalar> mins, Vector<Scalar> maxs) : mins_(std::move(mins)), maxs_(std::move(maxs)) {
    if (mins_.size() != maxs_.size()) throw Error(ErrorKind::ShapeMismatch, "scaler bounds differ in length");
  }

  static MinMaxScaler fit(const Matrix<Scalar>& x) {
    if (x.rows() == 0 || x.cols() == 0) throw Error(ErrorKind::EmptyMatrix, "cannot fit scaler on an empty matrix");
    return MinMaxScaler(x.colwise().minCoeff().transpose(), x.colwise().maxCoeff().transpose());
  }

  Matrix<Scalar> transform(const Matrix<Scalar>& x) const {
    if (x.cols() != mins_.size()) {
      throw Error(ErrorKind::ShapeMismatch, "scaler fitted on " + std::to_string(mins_.size()) +
                                                " columns, got " + std::to_string(x.cols()));
    }
    Matrix<Scalar> out(x.rows(), x.cols());
    for (Index j = 0; j < x.cols(); ++j) {
      const Scalar span = maxs_[j] - mins_[j];
      if (span > Scalar(0)) {
        out.col(j) = ((x.col(j).array() - mins_[j]) / span).cwiseMax(Scalar(0)).cwiseMin(Scalar(1)).matrix();
      } else {
        out.col(j).setZero();
      }
    }
    return out;
  }

  const Vector<Scalar>& mins() const { return mins_; }
  const Vector<Scalar>& maxs() const { return maxs_; }

 private:
  Vector<Scalar> mins_;
  Vector<Scalar> maxs_;
};

template <typename Scalar>
BasicFeatureMatrix<Scalar> min_max_normalize(const BasicFeatureMatrix<Scalar>& m) {
  return {MinMaxScaler<Scalar>::fit(m.values).transform(m.values), m.provenance};
}

// ---------------------------------------------------------------------------
// File-level drivers.

struct MelConfig {
  int n_mels = 80;
  double fmin_hz = 0.0;
  double fmax_hz = 8000.0;
};

struct AudioConfig {
  int sample_rate_hz = 16000;
  StftConfig stft;
  MelConfig mel;
  DbConfig db;
  bool normalize = true;
};

Waveform resample_linear(const Waveform& wave, int target_rate_hz);

MelFilterbank filterbank_for(const AudioConfig& cfg);

// Resample, zero-pad clips shorter than one frame, then stft -> Mel -> dB.
Spectrogram log_mel_spectrogram(const Waveform& wave, const AudioConfig& cfg, const MelFilterbank& fb);

// Decodes and featurizes every path. Output order follows `paths` whatever the
// thread count. With a non-empty cache_dir, results are read from and written
// to per-file caches keyed on the path and the audio configuration.
std::vector<Spectrogram> extract_log_mel(std::span<const std::string> paths, const AudioConfig& cfg,
                                         std::size_t threads,
                                         const std::filesystem::path& cache_dir = {});

// Pads or truncates every spectrogram to target_frames and stacks the
// flattened rows.
FeatureMatrix stack_flattened(std::span<const Spectrogram> specs, Index target_frames);

// Feature cache layout, little-endian: magic "BOS1", u32 rows, u32 cols,
// rows * cols float64 in row-major order.
void write_feature_cache(const std::filesystem::path& path, const Matrix<double>& m);
Matrix<double> read_feature_cache(const std::filesystem::path& path);

}  // namespace bos
