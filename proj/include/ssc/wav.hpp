#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ssc::audio {

/// Decoded mono audio with dataset metadata. Samples are dimensionless
/// amplitudes in [-1, 1]; integer PCM is scaled by 1/2^(bits-1) on decode.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = 0;
  std::string clip_id;
  int fold = 0;
  int class_index = 0;
};

/// Decode a RIFF/WAVE file. Accepts integer PCM (8/16/24/32-bit) and 32-bit
/// IEEE float, 1 or 2 channels; stereo is averaged to mono.
///
/// Throws FormatError for malformed headers, UnsupportedFormatError for
/// codecs/channel counts outside that set, TruncationError when the data
/// chunk is shorter than declared.
AudioClip decode_wav(const std::filesystem::path& path);

/// Write a mono 16-bit PCM WAV (samples clamped to [-1, 1], scaled by 2^15,
/// rounded to nearest). Used by the toy-dataset generator and round-trip tests.
void write_wav_pcm16(const std::filesystem::path& path, const std::vector<double>& samples,
                     int sample_rate_hz);

/// Write a stereo 16-bit PCM WAV from separate channel buffers (equal length).
void write_wav_pcm16_stereo(const std::filesystem::path& path, const std::vector<double>& left,
                            const std::vector<double>& right, int sample_rate_hz);

}  // namespace ssc::audio
