#pragma once

#include <cstdint>
#include <filesystem>

namespace ssc::harness {

inline constexpr int kToyClasses = 5;
inline constexpr int kToyClipsPerClass = 40;
inline constexpr int kToyFolds = 5;
inline constexpr int kToySampleRate = 44100;
inline constexpr double kToySeconds = 1.0;

/// Bundled synthetic mini dataset: 5 classes x 40 one-second clips of tones
/// and band-limited noise at 44.1 kHz, spread evenly over 5 folds and named
/// with the {fold}-{id}-{take}-{target}.wav convention. Classes 0-3 live
/// below 10 kHz, class 4 between 12 and 18 kHz, so a (0, 10k, 22.05k) band
/// split separates them across branches. Deterministic in the seed.
///
/// Returns the number of files written.
int generate_toy_dataset(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace ssc::harness
