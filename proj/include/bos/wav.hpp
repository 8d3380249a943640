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

#include "bos/common.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace bos {

template <typename Scalar>
struct BasicWaveform {
  Vector<Scalar> samples;  // mono, in [-1, 1]
  int sample_rate_hz = 16000;
};

using Waveform = BasicWaveform<double>;

enum class WavEncoding { Pcm16, Float32 };

// RIFF/WAVE reader for PCM 16-bit and IEEE float 32-bit data, mono or stereo
// (WAVE_FORMAT_EXTENSIBLE wrappers of either are accepted). Stereo is
// downmixed by channel mean; PCM16 is scaled by 1/32768.
//
// Errors: UnreadableFile, CorruptHeader, UnsupportedEncoding, EmptyAudio.
Waveform decode_wav(const std::filesystem::path& path);
Waveform decode_wav(std::span<const std::uint8_t> bytes);

// Writes interleaved samples. PCM16 quantizes round(x * 32767) after clamping.
std::vector<std::uint8_t> encode_wav(std::span<const double> interleaved, int channels,
                                     int sample_rate_hz, WavEncoding encoding);
void write_wav(const std::filesystem::path& path, const Waveform& wave,
               WavEncoding encoding = WavEncoding::Pcm16);

}  // namespace bos
