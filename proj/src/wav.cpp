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

#include "bos/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>

namespace bos {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct Format {
  std::uint16_t code = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

double sample_at(const std::uint8_t* p, const Format& fmt) {
  if (fmt.code == kFormatPcm) {
    const auto raw = static_cast<std::int16_t>(read_u16(p));
    return static_cast<double>(raw) / 32768.0;
  }
  const float f = std::bit_cast<float>(read_u32(p));
  if (!std::isfinite(f)) return 0.0;
  return std::clamp(static_cast<double>(f), -1.0, 1.0);
}

}  // namespace

Waveform decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorKind::CorruptHeader, "not a RIFF/WAVE stream");
  }

  std::optional<Format> fmt;
  std::optional<std::span<const std::uint8_t>> data;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const auto* hdr = bytes.data() + pos;
    const std::size_t size = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    const std::size_t avail = bytes.size() - body;

    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16 || size > avail) throw Error(ErrorKind::CorruptHeader, "short fmt chunk");
      const auto* f = bytes.data() + body;
      Format parsed{read_u16(f), read_u16(f + 2), read_u32(f + 4), read_u16(f + 12),
                    read_u16(f + 14)};
      if (parsed.code == kFormatExtensible) {
        if (size < 40) throw Error(ErrorKind::CorruptHeader, "short extensible fmt chunk");
        parsed.code = read_u16(f + 24);  // first two bytes of the subformat GUID
      }
      fmt = parsed;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      // Streaming writers leave the size unset; take what is there.
      data = bytes.subspan(body, std::min(size, avail));
      break;
    }
    if (size > avail) break;
    pos = body + size + (size & 1);
  }

  if (!fmt) throw Error(ErrorKind::CorruptHeader, "missing fmt chunk");
  if (!data) throw Error(ErrorKind::CorruptHeader, "missing data chunk");

  const bool pcm16 = fmt->code == kFormatPcm && fmt->bits == 16;
  const bool float32 = fmt->code == kFormatFloat && fmt->bits == 32;
  if (!pcm16 && !float32) {
    throw Error(ErrorKind::UnsupportedEncoding,
                "unsupported WAV encoding (format " + std::to_string(fmt->code) + ", " +
                    std::to_string(fmt->bits) + " bits)");
  }
  if (fmt->channels != 1 && fmt->channels != 2) {
    throw Error(ErrorKind::UnsupportedEncoding,
                "unsupported channel count " + std::to_string(fmt->channels));
  }
  if (fmt->sample_rate == 0) throw Error(ErrorKind::CorruptHeader, "zero sample rate");

  const std::size_t bytes_per_sample = fmt->bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  if (fmt->block_align != frame_bytes) {
    throw Error(ErrorKind::CorruptHeader, "block alignment does not match channels * width");
  }
  const std::size_t frames = data->size() / frame_bytes;
  if (frames == 0) throw Error(ErrorKind::EmptyAudio, "WAV data chunk holds no samples");

  Waveform wave;
  wave.sample_rate_hz = static_cast<int>(fmt->sample_rate);
  wave.samples.resize(static_cast<Index>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    const auto* frame = data->data() + i * frame_bytes;
    double acc = 0.0;
    for (std::size_t ch = 0; ch < fmt->channels; ++ch) {
      acc += sample_at(frame + ch * bytes_per_sample, *fmt);
    }
    wave.samples[static_cast<Index>(i)] = acc / fmt->channels;
  }
  return wave;
}

Waveform decode_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableFile, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_wav(std::span<const std::uint8_t>(bytes));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(std::span<const double> interleaved, int channels,
                                     int sample_rate_hz, WavEncoding encoding) {
  if (channels < 1 || sample_rate_hz <= 0 || interleaved.size() % channels != 0) {
    throw Error(ErrorKind::InvalidArgument, "encode_wav: bad channel layout");
  }
  const std::uint16_t width = encoding == WavEncoding::Pcm16 ? 2 : 4;
  const auto data_bytes = static_cast<std::uint32_t>(interleaved.size() * width);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, encoding == WavEncoding::Pcm16 ? kFormatPcm : kFormatFloat);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz * channels * width));
  put_u16(out, static_cast<std::uint16_t>(channels * width));
  put_u16(out, static_cast<std::uint16_t>(width * 8));
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double x : interleaved) {
    const double c = std::clamp(x, -1.0, 1.0);
    if (encoding == WavEncoding::Pcm16) {
      put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::lround(c * 32767.0))));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(c)));
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const Waveform& wave, WavEncoding encoding) {
  std::vector<double> samples(wave.samples.data(), wave.samples.data() + wave.samples.size());
  const auto bytes = encode_wav(samples, 1, wave.sample_rate_hz, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::UnreadableFile, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace bos
