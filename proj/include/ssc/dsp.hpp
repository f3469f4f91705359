#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssc/error.hpp"
#include "ssc/wav.hpp"

namespace ssc::dsp {

/// A band is too narrow for the configured mel resolution: some filter has no
/// FFT bin inside its support (adjacent centers collapse onto the same bin).
struct DegenerateBandError : ConfigError {
  using ConfigError::ConfigError;
};

/// Dense row-major double matrix for DSP intermediates.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
};

struct SpectrogramConfig {
  int fft_size = 1024;       // T, must be even (hop is T/2)
  int n_frames = 60;         // N, frames per analysis window
  int n_mels = 60;           // K
  int sample_rate_hz = 44100;
  double log_floor = 1e-10;  // added inside the log
  bool hann_window = false;  // optional; the default transform is rectangular

  int hop_samples() const { return fft_size / 2; }
  int n_bins() const { return fft_size / 2; }  // bins m = 1 .. T/2
  /// Frequency of FFT bin m (1-based, m in [1, T/2]).
  double bin_hz(int m) const {
    return static_cast<double>(m) * sample_rate_hz / fft_size;
  }
  void validate() const;
};

/// Energy spectrum of one analysis window: n_frames x (T/2), entry (n, m-1)
/// holds |S(m, n)|^2 for bin m in [1, T/2].
struct EnergySpectrum {
  Matrix values;
  int frame_hop = 0;  // samples (= T/2)
};

struct MelFilterBank {
  double band_low_hz = 0.0;
  double band_high_hz = 0.0;
  Matrix weights;  // K x (T/2), rows normalized to peak 1
  std::vector<double> center_freqs_hz;
};

/// Ordered frequency cut points f_L = f_0 < f_1 < ... < f_{Nss} = f_H.
struct BandScheme {
  std::vector<double> cut_points_hz;

  int n_bands() const { return static_cast<int>(cut_points_hz.size()) - 1; }
  void validate(int sample_rate_hz) const;
};

/// One band of one analysis window: (n_frames, n_mels, 3) float tensor with
/// channels {logmel, delta, delta-delta}.
struct LogmelTensor {
  int n_frames = 0;
  int n_mels = 0;
  std::vector<float> data;  // frame-major: (n, k, c)
  int band_index = 0;
  std::string clip_id;
  int window_index = 0;

  float& at(int n, int k, int c) {
    return data[(static_cast<std::size_t>(n) * n_mels + k) * 3 + c];
  }
  float at(int n, int k, int c) const {
    return data[(static_cast<std::size_t>(n) * n_mels + k) * 3 + c];
  }
};

/// Clip windowing: windows of `window_frames` frames at `hop_frames` hop; a
/// trailing partial window is zero-padded in time when `pad_tail` is set.
struct WindowPolicy {
  int window_frames = 60;
  int hop_frames = 30;
  bool pad_tail = true;
};

double hz_to_mel(double f_hz);
double mel_to_hz(double mel);

/// Number of whole T-sample frames available at hop T/2.
int total_frames(std::size_t n_samples, const SpectrogramConfig& cfg);

/// Number of analysis windows the policy yields over `frames_available` frames.
int window_count(int frames_available, const WindowPolicy& policy);

/// Energy spectrum of window `window_index` (offset window_index * hop_frames
/// * T/2 samples). Frame n covers samples nT/2+1 .. (n+2)T/2 of the window,
/// rectangular window, no pre-emphasis; entry (n, m) = |sum_t s(t) e^{-j 2 pi
/// m t / T}|^2 for m in [1, T/2].
///
/// Throws ShapeError when the clip cannot supply all N frames (callers decide
/// the padding policy).
EnergySpectrum stft_energy(const audio::AudioClip& clip, const SpectrogramConfig& cfg,
                           int window_index, const WindowPolicy& policy = {});

/// As above but over a raw sample buffer starting at the window offset.
EnergySpectrum stft_energy_buffer(const double* samples, std::size_t n_samples,
                                  const SpectrogramConfig& cfg);

/// K triangular filters with centers equally spaced in mel between
/// mel(band_low) and mel(band_high); filter k spans (center_{k-1},
/// center_{k+1}) with virtual centers at the band edges; each row is
/// normalized to peak exactly 1 at the bin nearest its center.
MelFilterBank build_mel_filterbank(const SpectrogramConfig& cfg, double band_low_hz,
                                   double band_high_hz);

/// out(n, k) = log(sum_m spec(n, m) * H(m, k) + log_floor), natural log.
Matrix logmel(const EnergySpectrum& spec, const MelFilterBank& bank,
              const SpectrogramConfig& cfg);

/// Regression delta along time with window W=2 and replicate padding:
/// d(n) = sum_{w=1..2} w * (x(n+w) - x(n-w)) / (2 * sum w^2).
Matrix regression_delta(const Matrix& x);

/// Stack {logmel, delta, delta-delta} into the three-channel tensor.
/// Requires n_frames >= 5 (delta window of 2 on each side).
LogmelTensor delta_channels(const Matrix& logmel_matrix);

/// Full per-clip feature extraction: for each analysis window and each band of
/// the scheme, a LogmelTensor. The energy spectrum is computed once per window
/// and shared across bands. Output is window-major, band-minor.
std::vector<LogmelTensor> extract_features(const audio::AudioClip& clip,
                                           const SpectrogramConfig& cfg, const BandScheme& scheme,
                                           const WindowPolicy& policy = {});

}  // namespace ssc::dsp
