#include "ssc/toy.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

#include "ssc/rng.hpp"
#include "ssc/wav.hpp"

namespace ssc::harness {

namespace {

struct ClassSignature {
  bool is_tone = true;
  double freq_lo_hz = 0.0;  // tone: base frequency; noise: band edges
  double freq_hi_hz = 0.0;
};

constexpr ClassSignature kSignatures[kToyClasses] = {
    {true, 440.0, 0.0},        // low tone
    {true, 1800.0, 0.0},       // mid tone
    {false, 3000.0, 6000.0},   // mid noise band
    {true, 7600.0, 0.0},       // upper-mid tone
    {false, 12000.0, 18000.0}  // high noise band (above a 10 kHz cut)
};

std::vector<double> synthesize(const ClassSignature& sig, Rng& rng) {
  const int n = static_cast<int>(kToySampleRate * kToySeconds);
  std::vector<double> samples(n, 0.0);
  const double amp = rng.uniform(0.35, 0.7);

  if (sig.is_tone) {
    const double freq = sig.freq_lo_hz * (1.0 + rng.uniform(-0.08, 0.08));
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double w = 2.0 * std::numbers::pi * freq / kToySampleRate;
    for (int t = 0; t < n; ++t) samples[t] = amp * std::sin(w * t + phase);
  } else {
    // Band-limited noise: a dense comb of random-phase sinusoids, advanced by
    // complex phasor recurrences rather than per-sample sin() calls.
    constexpr int kPartials = 64;
    std::vector<std::complex<double>> phasor(kPartials), step(kPartials);
    for (int p = 0; p < kPartials; ++p) {
      const double w =
          2.0 * std::numbers::pi * rng.uniform(sig.freq_lo_hz, sig.freq_hi_hz) / kToySampleRate;
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      phasor[p] = {std::cos(phase), std::sin(phase)};
      step[p] = {std::cos(w), std::sin(w)};
    }
    const double scale = amp / std::sqrt(static_cast<double>(kPartials));
    for (int t = 0; t < n; ++t) {
      double acc = 0.0;
      for (int p = 0; p < kPartials; ++p) {
        acc += phasor[p].imag();
        phasor[p] *= step[p];
      }
      samples[t] = scale * acc;
    }
  }

  for (int t = 0; t < n; ++t) {
    samples[t] = std::clamp(samples[t] + 0.004 * rng.normal(), -1.0, 1.0);
  }
  return samples;
}

}  // namespace

int generate_toy_dataset(const std::filesystem::path& dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  int written = 0;
  int clip_ordinal = 0;
  for (int cls = 0; cls < kToyClasses; ++cls) {
    for (int i = 0; i < kToyClipsPerClass; ++i, ++clip_ordinal) {
      const int fold = 1 + i % kToyFolds;
      Rng rng(derive_seed(seed, "toy.clip." + std::to_string(clip_ordinal)));
      const std::vector<double> samples = synthesize(kSignatures[cls], rng);
      char name[64];
      std::snprintf(name, sizeof name, "%d-%06d-A-%d.wav", fold, clip_ordinal, cls);
      audio::write_wav_pcm16(dir / name, samples, kToySampleRate);
      ++written;
    }
  }
  return written;
}

}  // namespace ssc::harness
