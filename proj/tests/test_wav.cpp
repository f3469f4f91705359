#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <vector>

#include "ssc/rng.hpp"
#include "ssc/error.hpp"
#include "ssc/wav.hpp"
#include "temp_dir.hpp"

using ssc::audio::AudioClip;
using ssc::audio::decode_wav;
using ssc::audio::write_wav_pcm16;
using ssc::audio::write_wav_pcm16_stereo;
using testutil::TempDir;

namespace {

void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back(v >> 8);
}
void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void put_tag(std::vector<unsigned char>& b, const char* tag) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>(tag[i]));
}

/// Hand-rolled WAV bytes for exercising decoder edge cases.
std::vector<unsigned char> make_wav(std::uint16_t format, std::uint16_t channels,
                                    std::uint32_t rate, std::uint16_t bits,
                                    const std::vector<unsigned char>& payload,
                                    std::int64_t declared_data_size = -1) {
  std::vector<unsigned char> b;
  put_tag(b, "RIFF");
  put_u32(b, 36 + static_cast<std::uint32_t>(payload.size()));
  put_tag(b, "WAVE");
  put_tag(b, "fmt ");
  put_u32(b, 16);
  put_u16(b, format);
  put_u16(b, channels);
  put_u32(b, rate);
  put_u32(b, rate * channels * bits / 8);
  put_u16(b, channels * bits / 8);
  put_u16(b, bits);
  put_tag(b, "data");
  put_u32(b, declared_data_size < 0 ? static_cast<std::uint32_t>(payload.size())
                                    : static_cast<std::uint32_t>(declared_data_size));
  b.insert(b.end(), payload.begin(), payload.end());
  return b;
}

std::filesystem::path write_bytes(const TempDir& dir, const std::string& name,
                                  const std::vector<unsigned char>& bytes) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  return path;
}

}  // namespace

TEST_CASE("16-bit PCM sample 16384 decodes to 0.5") {
  TempDir dir("wav");
  std::vector<unsigned char> payload;
  put_u16(payload, 16384);
  const auto path = write_bytes(dir, "one.wav", make_wav(1, 1, 44100, 16, payload));
  const AudioClip clip = decode_wav(path);
  REQUIRE(clip.samples.size() == 1);
  CHECK(clip.samples[0] == 0.5);
  CHECK(clip.sample_rate_hz == 44100);
}

TEST_CASE("stereo frames average to mono") {
  TempDir dir("wav");
  // (0.25, 0.75) is exactly representable in 16-bit steps -> mono exactly 0.5.
  write_wav_pcm16_stereo(dir / "st.wav", {0.25, 0.25}, {0.75, 0.75}, 44100);
  AudioClip clip = decode_wav(dir / "st.wav");
  REQUIRE(clip.samples.size() == 2);
  CHECK(clip.samples[0] == 0.5);

  write_wav_pcm16_stereo(dir / "st2.wav", {0.2}, {0.6}, 44100);
  clip = decode_wav(dir / "st2.wav");
  CHECK(clip.samples[0] == doctest::Approx(0.4).epsilon(1e-4));
}

TEST_CASE("written 440 Hz sine round-trips") {
  TempDir dir("wav");
  const double amplitude = 0.6;
  std::vector<double> sine(44100);
  for (std::size_t t = 0; t < sine.size(); ++t) {
    sine[t] = amplitude * std::sin(2.0 * std::numbers::pi * 440.0 * t / 44100.0);
  }
  write_wav_pcm16(dir / "sine.wav", sine, 44100);
  const AudioClip clip = decode_wav(dir / "sine.wav");
  REQUIRE(clip.samples.size() == 44100);
  CHECK(clip.sample_rate_hz == 44100);
  double peak = 0.0;
  for (const double s : clip.samples) peak = std::max(peak, std::abs(s));
  CHECK(peak == doctest::Approx(amplitude).epsilon(1e-4));
}

TEST_CASE("16-bit round trip stays within 1/2^15 per sample") {
  TempDir dir("wav");
  ssc::Rng rng(7);
  std::vector<double> samples(2000);
  for (double& s : samples) s = rng.uniform(-1.0, 1.0);
  write_wav_pcm16(dir / "rt.wav", samples, 22050);
  const AudioClip clip = decode_wav(dir / "rt.wav");
  REQUIRE(clip.samples.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(std::abs(clip.samples[i] - samples[i]) <= 1.0 / 32768.0);
  }
}

TEST_CASE("8/24/32-bit PCM and float32 decode") {
  TempDir dir("wav");
  SUBCASE("8-bit unsigned") {
    const auto path = write_bytes(dir, "w8.wav", make_wav(1, 1, 8000, 8, {192}));
    CHECK(decode_wav(path).samples[0] == doctest::Approx(0.5));
  }
  SUBCASE("24-bit") {
    std::vector<unsigned char> payload = {0x00, 0x00, 0x40};  // 2^22 -> 0.5
    const auto path = write_bytes(dir, "w24.wav", make_wav(1, 1, 8000, 24, payload));
    CHECK(decode_wav(path).samples[0] == doctest::Approx(0.5));
  }
  SUBCASE("32-bit int") {
    std::vector<unsigned char> payload;
    put_u32(payload, 0x40000000u);  // 2^30 -> 0.5
    const auto path = write_bytes(dir, "w32.wav", make_wav(1, 1, 8000, 32, payload));
    CHECK(decode_wav(path).samples[0] == doctest::Approx(0.5));
  }
  SUBCASE("float32") {
    std::vector<unsigned char> payload;
    const float v = -0.25f;
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(payload, bits);
    const auto path = write_bytes(dir, "wf.wav", make_wav(3, 1, 8000, 32, payload));
    CHECK(decode_wav(path).samples[0] == doctest::Approx(-0.25));
  }
}

TEST_CASE("decoder error paths") {
  TempDir dir("wav");
  SUBCASE("malformed header") {
    const auto path = write_bytes(dir, "bad.wav", {'N', 'O', 'P', 'E', 0, 0, 0, 0});
    CHECK_THROWS_AS(decode_wav(path), ssc::FormatError);
  }
  SUBCASE("unsupported codec") {
    const auto path = write_bytes(dir, "alaw.wav", make_wav(6, 1, 8000, 8, {0x80}));
    CHECK_THROWS_AS(decode_wav(path), ssc::UnsupportedFormatError);
  }
  SUBCASE("too many channels") {
    std::vector<unsigned char> payload(6, 0);
    const auto path = write_bytes(dir, "3ch.wav", make_wav(1, 3, 8000, 16, payload));
    CHECK_THROWS_AS(decode_wav(path), ssc::UnsupportedFormatError);
  }
  SUBCASE("truncated data chunk") {
    std::vector<unsigned char> payload(4, 0);
    const auto path =
        write_bytes(dir, "trunc.wav", make_wav(1, 1, 8000, 16, payload, /*declared=*/100));
    CHECK_THROWS_AS(decode_wav(path), ssc::TruncationError);
  }
  SUBCASE("empty data chunk") {
    const auto path = write_bytes(dir, "empty.wav", make_wav(1, 1, 8000, 16, {}));
    CHECK_THROWS_AS(decode_wav(path), ssc::FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(decode_wav(dir / "nope.wav"), ssc::DataError);
  }
}
