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

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bos {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowMajorMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

enum class ErrorKind {
  InvalidArgument,
  UnreadableFile,
  MissingColumn,
  UnknownLabel,
  DuplicateId,
  InconsistentLabels,
  MissingInput,
  UnlabeledUtterance,
  UnsupportedEncoding,
  CorruptHeader,
  EmptyAudio,
  SignalTooShort,
  NegativeFrequency,
  InvalidRange,
  NyquistExceeded,
  ShapeMismatch,
  EmptyMatrix,
  EmptyCorpus,
  NegativeFeature,
  NonFiniteFeature,
  LengthMismatch,
  VersionMismatch,
  CorruptBundle,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports to callers. The kind is stable and
// machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Provenance { Audio, Text };

template <typename Scalar>
struct BasicFeatureMatrix {
  Matrix<Scalar> values;  // one row per sample
  Provenance provenance = Provenance::Audio;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

using FeatureMatrix = BasicFeatureMatrix<double>;

// Deterministic random streams.
//
// std::mt19937_64 is fully specified by the standard, so its raw output is
// identical on every platform. The standard distributions are not, which is
// why bounded draws go through uniform_index() below.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
std::uint64_t fnv1a64(std::string_view bytes);

using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection sampling. n must be > 0.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

// Uniform real in [0, 1) built from the top 53 bits of one draw.
double uniform_unit(Rng& rng);

template <typename It>
void shuffle(It first, It last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = uniform_index(rng, i);
    std::iter_swap(first + (i - 1), first + j);
  }
}

// Worker count from BOS_THREADS, falling back to the hardware concurrency.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) on up to `threads` workers. If any call throws,
// the exception from the lowest failing index is rethrown after all workers
// finish, so the reported error does not depend on scheduling.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace bos
