#include "ssc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ssc/error.hpp"

namespace ssc::audio {

namespace {

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

/// ESC-50 name: {fold}-{id}-{take}-{target}.wav
std::optional<ClipRef> parse_esc50_name(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  const auto tokens = split(stem, '-');
  if (tokens.size() != 4) return std::nullopt;
  const auto fold = parse_int(tokens[0]);
  const auto target = parse_int(tokens[3]);
  if (!fold || !target || *fold < 1 || *target < 0) return std::nullopt;
  return ClipRef{path, stem, *fold, *target};
}

std::vector<std::filesystem::path> collect_wavs(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) {
    throw DataError("dataset: not a directory: " + root.string());
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    if (ext == ".wav") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end(),
            [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });
  return paths;
}

DatasetManifest from_csv(const std::filesystem::path& root, const std::filesystem::path& csv) {
  std::ifstream in(csv);
  if (!in) throw DataError("dataset: cannot open index " + csv.string());
  std::string line;
  if (!std::getline(in, line)) throw ManifestError("dataset: empty index " + csv.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "path,fold,target") {
    throw ManifestError("dataset: index header must be 'path,fold,target', got '" + line + "'");
  }

  DatasetManifest manifest;
  std::vector<std::string> bad;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    const auto fold = cols.size() == 3 ? parse_int(cols[1]) : std::nullopt;
    const auto target = cols.size() == 3 ? parse_int(cols[2]) : std::nullopt;
    if (cols.size() != 3 || !fold || !target || *fold < 1 || *target < 0) {
      bad.push_back(csv.string() + ":" + std::to_string(line_no));
      continue;
    }
    std::filesystem::path p(cols[0]);
    if (p.is_relative()) p = root / p;
    if (!std::filesystem::is_regular_file(p)) {
      throw ManifestError("dataset: index references missing file " + p.string());
    }
    manifest.clips.push_back(ClipRef{p, p.stem().string(), *fold, *target});
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "dataset: unparsable index rows:";
    for (const auto& b : bad) msg << ' ' << b;
    throw ManifestError(msg.str());
  }
  return manifest;
}

}  // namespace

DatasetManifest scan_dataset(const std::filesystem::path& root, const ScanLayout& layout) {
  std::optional<std::filesystem::path> csv = layout.csv_index;
  if (!csv && std::filesystem::is_regular_file(root / "index.csv")) {
    csv = root / "index.csv";
  }

  DatasetManifest manifest;
  if (csv) {
    manifest = from_csv(root, *csv);
  } else {
    std::vector<std::string> bad;
    for (const auto& path : collect_wavs(root)) {
      if (auto ref = parse_esc50_name(path)) {
        manifest.clips.push_back(std::move(*ref));
      } else {
        bad.push_back(path.string());
      }
    }
    if (!bad.empty()) {
      std::ostringstream msg;
      msg << "dataset: filenames do not follow {fold}-{id}-{take}-{target}.wav and no CSV index "
             "is present:";
      for (const auto& b : bad) msg << ' ' << b;
      throw ManifestError(msg.str());
    }
  }

  if (manifest.clips.empty()) {
    throw DataError("dataset: no clips found under " + root.string());
  }

  std::sort(manifest.clips.begin(), manifest.clips.end(), [](const auto& a, const auto& b) {
    return a.path.generic_string() < b.path.generic_string();
  });

  int max_target = 0;
  for (const auto& clip : manifest.clips) {
    max_target = std::max(max_target, clip.class_index);
    manifest.folds.insert(clip.fold);
  }
  manifest.n_classes = max_target + 1;
  return manifest;
}

AudioClip load_clip(const ClipRef& ref) {
  AudioClip clip = decode_wav(ref.path);
  clip.clip_id = ref.clip_id;
  clip.fold = ref.fold;
  clip.class_index = ref.class_index;
  return clip;
}

}  // namespace ssc::audio
