#include "ssc/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "ssc/binio.hpp"
#include "ssc/error.hpp"

namespace ssc::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

FmtChunk parse_fmt(const std::vector<char>& body, const std::filesystem::path& path) {
  if (body.size() < 16) {
    throw FormatError("wav: fmt chunk too short in " + path.string());
  }
  auto u16at = [&](std::size_t off) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(body[off]) |
                                      (static_cast<unsigned char>(body[off + 1]) << 8));
  };
  auto u32at = [&](std::size_t off) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(body[off + i]);
    return v;
  };
  FmtChunk fmt;
  fmt.format = u16at(0);
  fmt.channels = u16at(2);
  fmt.sample_rate = u32at(4);
  fmt.bits_per_sample = u16at(14);
  if (fmt.format == kFormatExtensible) {
    // Extensible header: the real codec is the first two bytes of the subformat GUID.
    if (body.size() < 26 + 16) {
      throw FormatError("wav: extensible fmt chunk too short in " + path.string());
    }
    fmt.format = u16at(24);
  }
  return fmt;
}

double decode_sample(const char* p, std::uint16_t bits, std::uint16_t format) {
  if (format == kFormatIeeeFloat) {
    std::uint32_t u = 0;
    for (int i = 3; i >= 0; --i) u = (u << 8) | static_cast<unsigned char>(p[i]);
    float f;
    std::memcpy(&f, &u, 4);
    return f;
  }
  switch (bits) {
    case 8:
      // 8-bit PCM is unsigned with midpoint 128.
      return (static_cast<double>(static_cast<unsigned char>(p[0])) - 128.0) / 128.0;
    case 16: {
      const std::int16_t v = static_cast<std::int16_t>(
          static_cast<unsigned char>(p[0]) | (static_cast<unsigned char>(p[1]) << 8));
      return static_cast<double>(v) / 32768.0;
    }
    case 24: {
      std::int32_t v = static_cast<unsigned char>(p[0]) |
                       (static_cast<unsigned char>(p[1]) << 8) |
                       (static_cast<unsigned char>(p[2]) << 16);
      if (v & 0x800000) v |= ~0xffffff;  // sign-extend
      return static_cast<double>(v) / 8388608.0;
    }
    case 32: {
      std::int32_t v = 0;
      for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
      return static_cast<double>(v) / 2147483648.0;
    }
    default:
      throw UnsupportedFormatError("wav: unsupported bit depth " + std::to_string(bits));
  }
}

void write_riff_header(std::ostream& out, std::uint32_t data_bytes, int sample_rate_hz,
                       std::uint16_t channels) {
  const std::uint16_t bits = 16;
  const std::uint16_t block_align = static_cast<std::uint16_t>(channels * bits / 8);
  out.write("RIFF", 4);
  write_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, kFormatPcm);
  write_u16(out, channels);
  write_u32(out, static_cast<std::uint32_t>(sample_rate_hz));
  write_u32(out, static_cast<std::uint32_t>(sample_rate_hz) * block_align);
  write_u16(out, block_align);
  write_u16(out, bits);
  out.write("data", 4);
  write_u32(out, data_bytes);
}

std::int16_t to_pcm16(double x) {
  const double scaled = std::round(std::clamp(x, -1.0, 1.0) * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

}  // namespace

AudioClip decode_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("wav: cannot open " + path.string());
  }

  char tag[4];
  read_exact(in, tag, 4, "RIFF tag");
  if (std::memcmp(tag, "RIFF", 4) != 0) {
    throw FormatError("wav: missing RIFF tag in " + path.string());
  }
  read_u32(in, "RIFF size");
  read_exact(in, tag, 4, "WAVE tag");
  if (std::memcmp(tag, "WAVE", 4) != 0) {
    throw FormatError("wav: missing WAVE tag in " + path.string());
  }

  FmtChunk fmt;
  bool have_fmt = false;
  std::vector<char> data;
  bool have_data = false;

  while (in.peek() != EOF) {
    read_exact(in, tag, 4, "chunk id");
    const std::uint32_t chunk_len = read_u32(in, "chunk size");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      std::vector<char> body(chunk_len);
      read_exact(in, body.data(), chunk_len, "fmt chunk");
      fmt = parse_fmt(body, path);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data.resize(chunk_len);
      in.read(data.data(), chunk_len);
      if (static_cast<std::uint32_t>(in.gcount()) != chunk_len) {
        throw TruncationError("wav: data chunk truncated in " + path.string());
      }
      have_data = true;
    } else {
      in.seekg(chunk_len, std::ios::cur);
    }
    if (chunk_len % 2 == 1 && in.peek() != EOF) in.seekg(1, std::ios::cur);  // word padding
  }

  if (!have_fmt) throw FormatError("wav: no fmt chunk in " + path.string());
  if (!have_data) throw FormatError("wav: no data chunk in " + path.string());
  if (fmt.format != kFormatPcm && fmt.format != kFormatIeeeFloat) {
    throw UnsupportedFormatError("wav: unsupported codec " + std::to_string(fmt.format) + " in " +
                                 path.string());
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    throw UnsupportedFormatError("wav: unsupported channel count " +
                                 std::to_string(fmt.channels) + " in " + path.string());
  }
  if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample != 32) {
    throw UnsupportedFormatError("wav: float wav must be 32-bit in " + path.string());
  }
  if (fmt.sample_rate == 0) throw FormatError("wav: zero sample rate in " + path.string());

  const std::size_t bytes_per_sample = fmt.bits_per_sample / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
  if (frame_bytes == 0) throw FormatError("wav: zero block size in " + path.string());
  const std::size_t n_frames = data.size() / frame_bytes;
  if (n_frames == 0) throw FormatError("wav: empty data chunk in " + path.string());

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(fmt.sample_rate);
  clip.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const char* frame = data.data() + i * frame_bytes;
    double acc = 0.0;
    for (std::uint16_t c = 0; c < fmt.channels; ++c) {
      acc += decode_sample(frame + c * bytes_per_sample, fmt.bits_per_sample, fmt.format);
    }
    double v = acc / fmt.channels;
    if (!std::isfinite(v)) {
      throw FormatError("wav: non-finite sample in " + path.string());
    }
    clip.samples[i] = std::clamp(v, -1.0, 1.0);
  }
  return clip;
}

void write_wav_pcm16(const std::filesystem::path& path, const std::vector<double>& samples,
                     int sample_rate_hz) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("wav: cannot write " + path.string());
  write_riff_header(out, static_cast<std::uint32_t>(samples.size() * 2), sample_rate_hz, 1);
  for (const double s : samples) {
    write_u16(out, static_cast<std::uint16_t>(to_pcm16(s)));
  }
}

void write_wav_pcm16_stereo(const std::filesystem::path& path, const std::vector<double>& left,
                            const std::vector<double>& right, int sample_rate_hz) {
  if (left.size() != right.size()) {
    throw ShapeError("wav: stereo channel lengths differ");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("wav: cannot write " + path.string());
  write_riff_header(out, static_cast<std::uint32_t>(left.size() * 4), sample_rate_hz, 2);
  for (std::size_t i = 0; i < left.size(); ++i) {
    write_u16(out, static_cast<std::uint16_t>(to_pcm16(left[i])));
    write_u16(out, static_cast<std::uint16_t>(to_pcm16(right[i])));
  }
}

}  // namespace ssc::audio
