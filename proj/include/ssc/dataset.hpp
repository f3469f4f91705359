#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssc/wav.hpp"

namespace ssc::audio {

/// Clip metadata without decoded audio; decoding is deferred to load_clip.
struct ClipRef {
  std::filesystem::path path;
  std::string clip_id;
  int fold = 0;
  int class_index = 0;
};

struct DatasetManifest {
  std::vector<ClipRef> clips;  // lexicographic by path
  int n_classes = 0;           // 1 + max target
  std::set<int> folds;
};

struct ScanLayout {
  /// Explicit CSV index (columns path,fold,target). When unset, `index.csv`
  /// under the root is used if present, otherwise filenames are parsed with
  /// the ESC-50 convention {fold}-{id}-{take}-{target}.wav.
  std::optional<std::filesystem::path> csv_index;
};

/// Build a manifest from a directory tree of WAV files.
///
/// Throws ManifestError when filenames cannot be parsed (all offenders are
/// listed) or when a CSV row points at a missing file; DataError when the
/// tree holds no clips at all.
DatasetManifest scan_dataset(const std::filesystem::path& root, const ScanLayout& layout = {});

/// Decode the referenced file and attach the manifest metadata.
AudioClip load_clip(const ClipRef& ref);

}  // namespace ssc::audio
