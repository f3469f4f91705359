#include "ssc/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace ssc::dsp {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT (decimation in time).
void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

/// O(T^2) fallback for even non-power-of-two sizes.
void dft_direct(const std::vector<std::complex<double>>& in,
                std::vector<std::complex<double>>& out) {
  const std::size_t n = in.size();
  out.assign(n, {0.0, 0.0});
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(m * t) / n;
      acc += in[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[m] = acc;
  }
}

}  // namespace

void SpectrogramConfig::validate() const {
  if (fft_size <= 0 || fft_size % 2 != 0) {
    throw ConfigError("spectrogram: fft_size must be positive and even");
  }
  if (n_frames <= 0) throw ConfigError("spectrogram: n_frames must be positive");
  if (n_mels < 2) throw ConfigError("spectrogram: n_mels must be >= 2");
  if (sample_rate_hz <= 0) throw ConfigError("spectrogram: sample_rate_hz must be positive");
  if (!(log_floor > 0.0)) throw ConfigError("spectrogram: log_floor must be positive");
}

void BandScheme::validate(int sample_rate_hz) const {
  if (cut_points_hz.size() < 2) {
    throw ConfigError("band scheme: need at least two cut points");
  }
  if (cut_points_hz.front() < 0.0) {
    throw ConfigError("band scheme: lowest cut point must be >= 0");
  }
  if (cut_points_hz.back() > sample_rate_hz / 2.0 + 1e-9) {
    throw ConfigError("band scheme: highest cut point exceeds Nyquist");
  }
  for (std::size_t i = 1; i < cut_points_hz.size(); ++i) {
    if (!(cut_points_hz[i] > cut_points_hz[i - 1])) {
      throw ConfigError("band scheme: cut points must be strictly increasing");
    }
  }
}

double hz_to_mel(double f_hz) { return 2595.0 * std::log10(1.0 + f_hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

int total_frames(std::size_t n_samples, const SpectrogramConfig& cfg) {
  const std::size_t t = static_cast<std::size_t>(cfg.fft_size);
  if (n_samples < t) return 0;
  return static_cast<int>((n_samples - t) / cfg.hop_samples()) + 1;
}

int window_count(int frames_available, const WindowPolicy& policy) {
  if (frames_available <= policy.window_frames) {
    return 1;  // single (possibly padded) window
  }
  const int full = (frames_available - policy.window_frames) / policy.hop_frames + 1;
  const int covered = (full - 1) * policy.hop_frames + policy.window_frames;
  return full + ((policy.pad_tail && frames_available > covered) ? 1 : 0);
}

EnergySpectrum stft_energy_buffer(const double* samples, std::size_t n_samples,
                                  const SpectrogramConfig& cfg) {
  cfg.validate();
  const int t = cfg.fft_size;
  const int hop = cfg.hop_samples();
  const std::size_t needed =
      static_cast<std::size_t>(cfg.n_frames - 1) * hop + static_cast<std::size_t>(t);
  if (n_samples < needed) {
    throw ShapeError("stft: window out of range: need " + std::to_string(needed) +
                     " samples, have " + std::to_string(n_samples));
  }

  EnergySpectrum spec;
  spec.frame_hop = hop;
  spec.values = Matrix(cfg.n_frames, cfg.n_bins());

  std::vector<double> window(t, 1.0);
  if (cfg.hann_window) {
    for (int i = 0; i < t; ++i) {
      window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / t);
    }
  }

  std::vector<std::complex<double>> buf(t), out(t);
  const bool pow2 = is_power_of_two(t);
  for (int n = 0; n < cfg.n_frames; ++n) {
    const double* frame = samples + static_cast<std::size_t>(n) * hop;
    for (int i = 0; i < t; ++i) buf[i] = {frame[i] * window[i], 0.0};
    if (pow2) {
      fft_radix2(buf);
      for (int m = 1; m <= cfg.n_bins(); ++m) spec.values.at(n, m - 1) = std::norm(buf[m]);
    } else {
      dft_direct(buf, out);
      for (int m = 1; m <= cfg.n_bins(); ++m) spec.values.at(n, m - 1) = std::norm(out[m]);
    }
  }
  return spec;
}

EnergySpectrum stft_energy(const audio::AudioClip& clip, const SpectrogramConfig& cfg,
                           int window_index, const WindowPolicy& policy) {
  const std::size_t offset = static_cast<std::size_t>(window_index) * policy.hop_frames *
                             static_cast<std::size_t>(cfg.hop_samples());
  if (offset >= clip.samples.size()) {
    throw ShapeError("stft: window offset beyond clip end");
  }
  return stft_energy_buffer(clip.samples.data() + offset, clip.samples.size() - offset, cfg);
}

MelFilterBank build_mel_filterbank(const SpectrogramConfig& cfg, double band_low_hz,
                                   double band_high_hz) {
  cfg.validate();
  if (!(band_low_hz >= 0.0) || !(band_high_hz > band_low_hz) ||
      band_high_hz > cfg.sample_rate_hz / 2.0 + 1e-9) {
    throw ConfigError("filterbank: invalid band (" + std::to_string(band_low_hz) + ", " +
                      std::to_string(band_high_hz) + ")");
  }

  const int k_filters = cfg.n_mels;
  const double mel_lo = hz_to_mel(band_low_hz);
  const double mel_hi = hz_to_mel(band_high_hz);
  const double mel_step = (mel_hi - mel_lo) / (k_filters + 1);

  // Virtual centers at the band edges plus K real centers, all in mel.
  std::vector<double> mel_pts(k_filters + 2);
  for (int i = 0; i < k_filters + 2; ++i) mel_pts[i] = mel_lo + i * mel_step;

  MelFilterBank bank;
  bank.band_low_hz = band_low_hz;
  bank.band_high_hz = band_high_hz;
  bank.weights = Matrix(k_filters, cfg.n_bins());
  bank.center_freqs_hz.resize(k_filters);
  for (int k = 0; k < k_filters; ++k) bank.center_freqs_hz[k] = mel_to_hz(mel_pts[k + 1]);

  std::vector<double> bin_mel(cfg.n_bins());
  for (int m = 1; m <= cfg.n_bins(); ++m) bin_mel[m - 1] = hz_to_mel(cfg.bin_hz(m));

  std::vector<int> degenerate;
  for (int k = 0; k < k_filters; ++k) {
    const double lo = mel_pts[k];
    const double center = mel_pts[k + 1];
    const double hi = mel_pts[k + 2];
    double peak = 0.0;
    for (int m = 0; m < cfg.n_bins(); ++m) {
      const double fm = bin_mel[m];
      double w = 0.0;
      if (fm > lo && fm <= center) {
        w = (fm - lo) / (center - lo);
      } else if (fm > center && fm < hi) {
        w = (hi - fm) / (hi - center);
      }
      bank.weights.at(k, m) = w;
      peak = std::max(peak, w);
    }
    if (peak <= 0.0) {
      degenerate.push_back(k);
      continue;
    }
    for (int m = 0; m < cfg.n_bins(); ++m) bank.weights.at(k, m) /= peak;
  }

  if (!degenerate.empty()) {
    std::ostringstream msg;
    msg << "filterbank: band (" << band_low_hz << ", " << band_high_hz << ") Hz is too narrow for "
        << k_filters << " filters at fft_size " << cfg.fft_size
        << "; filters with no FFT bin in their support:";
    for (const int k : degenerate) msg << ' ' << k;
    throw DegenerateBandError(msg.str());
  }
  return bank;
}

Matrix logmel(const EnergySpectrum& spec, const MelFilterBank& bank,
              const SpectrogramConfig& cfg) {
  if (spec.values.cols != bank.weights.cols) {
    throw ShapeError("logmel: spectrum has " + std::to_string(spec.values.cols) +
                     " bins, filterbank expects " + std::to_string(bank.weights.cols));
  }
  Matrix out(spec.values.rows, bank.weights.rows);
  for (int n = 0; n < spec.values.rows; ++n) {
    for (int k = 0; k < bank.weights.rows; ++k) {
      double acc = 0.0;
      for (int m = 0; m < spec.values.cols; ++m) {
        acc += spec.values.at(n, m) * bank.weights.at(k, m);
      }
      out.at(n, k) = std::log(acc + cfg.log_floor);
    }
  }
  return out;
}

Matrix regression_delta(const Matrix& x) {
  constexpr int kWindow = 2;
  constexpr double kNorm = 2.0 * (1.0 * 1.0 + 2.0 * 2.0);  // 2 * sum d^2
  Matrix out(x.rows, x.cols);
  for (int n = 0; n < x.rows; ++n) {
    for (int k = 0; k < x.cols; ++k) {
      double acc = 0.0;
      for (int d = 1; d <= kWindow; ++d) {
        const int fwd = std::min(n + d, x.rows - 1);  // replicate padding
        const int bwd = std::max(n - d, 0);
        acc += d * (x.at(fwd, k) - x.at(bwd, k));
      }
      out.at(n, k) = acc / kNorm;
    }
  }
  return out;
}

LogmelTensor delta_channels(const Matrix& logmel_matrix) {
  if (logmel_matrix.rows < 5) {
    throw ShapeError("delta: need at least 5 frames, have " +
                     std::to_string(logmel_matrix.rows));
  }
  const Matrix d1 = regression_delta(logmel_matrix);
  const Matrix d2 = regression_delta(d1);

  LogmelTensor tensor;
  tensor.n_frames = logmel_matrix.rows;
  tensor.n_mels = logmel_matrix.cols;
  tensor.data.resize(static_cast<std::size_t>(tensor.n_frames) * tensor.n_mels * 3);
  for (int n = 0; n < tensor.n_frames; ++n) {
    for (int k = 0; k < tensor.n_mels; ++k) {
      tensor.at(n, k, 0) = static_cast<float>(logmel_matrix.at(n, k));
      tensor.at(n, k, 1) = static_cast<float>(d1.at(n, k));
      tensor.at(n, k, 2) = static_cast<float>(d2.at(n, k));
    }
  }
  return tensor;
}

std::vector<LogmelTensor> extract_features(const audio::AudioClip& clip,
                                           const SpectrogramConfig& cfg, const BandScheme& scheme,
                                           const WindowPolicy& policy) {
  cfg.validate();
  scheme.validate(cfg.sample_rate_hz);
  if (clip.sample_rate_hz != cfg.sample_rate_hz) {
    throw DataError("extract: clip '" + clip.clip_id + "' is sampled at " +
                    std::to_string(clip.sample_rate_hz) + " Hz, config expects " +
                    std::to_string(cfg.sample_rate_hz));
  }

  std::vector<MelFilterBank> banks;
  banks.reserve(scheme.n_bands());
  for (int i = 0; i < scheme.n_bands(); ++i) {
    banks.push_back(build_mel_filterbank(cfg, scheme.cut_points_hz[i],
                                         scheme.cut_points_hz[i + 1]));
  }

  const int hop = cfg.hop_samples();
  const std::size_t window_samples =
      static_cast<std::size_t>(cfg.n_frames - 1) * hop + static_cast<std::size_t>(cfg.fft_size);
  const int n_windows = window_count(total_frames(clip.samples.size(), cfg), policy);

  std::vector<LogmelTensor> out;
  out.reserve(static_cast<std::size_t>(n_windows) * scheme.n_bands());
  std::vector<double> padded;
  for (int w = 0; w < n_windows; ++w) {
    const std::size_t offset =
        static_cast<std::size_t>(w) * policy.hop_frames * static_cast<std::size_t>(hop);
    EnergySpectrum spec;
    if (offset + window_samples <= clip.samples.size()) {
      spec = stft_energy(clip, cfg, w, policy);
    } else {
      // Tail window: zero-pad the sample buffer out to a full window.
      padded.assign(window_samples, 0.0);
      if (offset < clip.samples.size()) {
        std::copy(clip.samples.begin() + static_cast<std::ptrdiff_t>(offset), clip.samples.end(),
                  padded.begin());
      }
      spec = stft_energy_buffer(padded.data(), padded.size(), cfg);
    }
    for (int band = 0; band < scheme.n_bands(); ++band) {
      LogmelTensor tensor = delta_channels(logmel(spec, banks[band], cfg));
      tensor.band_index = band;
      tensor.window_index = w;
      tensor.clip_id = clip.clip_id;
      out.push_back(std::move(tensor));
    }
  }
  return out;
}

}  // namespace ssc::dsp
