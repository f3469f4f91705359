#include "ssc/feature_cache.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include "ssc/binio.hpp"

namespace ssc::dsp {

namespace {
constexpr char kMagic[4] = {'S', 'S', 'L', 'M'};
constexpr std::uint16_t kVersion = 1;
constexpr double kSigmaFloor = 1e-8;
}  // namespace

FeatureCacheWriter::FeatureCacheWriter(const std::filesystem::path& path)
    : path_(path), stream_(path, std::ios::binary) {
  if (!stream_) throw DataError("cache: cannot write " + path.string());
  stream_.write(kMagic, 4);
  write_u16(stream_, kVersion);
}

void FeatureCacheWriter::add(const LogmelTensor& t) {
  write_u16(stream_, static_cast<std::uint16_t>(t.clip_id.size()));
  stream_.write(t.clip_id.data(), static_cast<std::streamsize>(t.clip_id.size()));
  write_u32(stream_, static_cast<std::uint32_t>(t.window_index));
  write_u16(stream_, static_cast<std::uint16_t>(t.band_index));
  write_u32(stream_, static_cast<std::uint32_t>(t.n_frames));
  write_u32(stream_, static_cast<std::uint32_t>(t.n_mels));
  write_u32(stream_, 3);
  for (const float v : t.data) write_f32(stream_, v);
}

void FeatureCacheWriter::close() {
  stream_.close();
  if (stream_.fail()) throw DataError("cache: write failed for " + path_.string());
}

void write_feature_cache(const std::filesystem::path& path,
                         const std::vector<LogmelTensor>& tensors) {
  FeatureCacheWriter writer(path);
  for (const auto& t : tensors) writer.add(t);
  writer.close();
}

std::vector<LogmelTensor> read_feature_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cache: cannot open " + path.string());
  char magic[4];
  read_exact(in, magic, 4, "cache magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("cache: bad magic in " + path.string());
  }
  const std::uint16_t version = read_u16(in, "cache version");
  if (version != kVersion) {
    throw FormatError("cache: unsupported version " + std::to_string(version) + " in " +
                      path.string());
  }

  std::vector<LogmelTensor> tensors;
  while (in.peek() != EOF) {
    LogmelTensor t;
    const std::uint16_t id_len = read_u16(in, "clip id length");
    t.clip_id.resize(id_len);
    read_exact(in, t.clip_id.data(), id_len, "clip id");
    t.window_index = static_cast<int>(read_u32(in, "window index"));
    t.band_index = static_cast<int>(read_u16(in, "band index"));
    t.n_frames = static_cast<int>(read_u32(in, "dim 0"));
    t.n_mels = static_cast<int>(read_u32(in, "dim 1"));
    const std::uint32_t channels = read_u32(in, "dim 2");
    if (channels != 3 || t.n_frames <= 0 || t.n_mels <= 0) {
      throw FormatError("cache: bad record dims in " + path.string());
    }
    t.data.resize(static_cast<std::size_t>(t.n_frames) * t.n_mels * 3);
    for (float& v : t.data) v = read_f32(in, "payload");
    tensors.push_back(std::move(t));
  }
  return tensors;
}

std::size_t count_feature_cache_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cache: cannot open " + path.string());
  char magic[4];
  read_exact(in, magic, 4, "cache magic");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("cache: bad magic in " + path.string());
  }
  if (read_u16(in, "cache version") != kVersion) {
    throw FormatError("cache: unsupported version in " + path.string());
  }
  const auto file_size = static_cast<std::streamoff>(std::filesystem::file_size(path));
  std::size_t count = 0;
  while (in.peek() != EOF) {
    const std::uint16_t id_len = read_u16(in, "clip id length");
    in.seekg(id_len + 4 + 2, std::ios::cur);  // clip id, window, band
    const std::uint32_t d0 = read_u32(in, "dim 0");
    const std::uint32_t d1 = read_u32(in, "dim 1");
    const std::uint32_t d2 = read_u32(in, "dim 2");
    in.seekg(static_cast<std::streamoff>(d0) * d1 * d2 * 4, std::ios::cur);
    if (!in || in.tellg() > file_size) {
      throw TruncationError("cache: truncated record in " + path.string());
    }
    ++count;
  }
  return count;
}

ChannelStats compute_channel_stats(const std::vector<LogmelTensor>& training) {
  if (training.empty()) {
    throw DataError("stats: empty training collection and no stats provided");
  }
  ChannelStats stats;
  double sum[3] = {0.0, 0.0, 0.0};
  std::size_t count = 0;
  for (const auto& t : training) {
    const std::size_t cells = t.data.size() / 3;
    count += cells;
    for (std::size_t i = 0; i < t.data.size(); i += 3) {
      sum[0] += t.data[i];
      sum[1] += t.data[i + 1];
      sum[2] += t.data[i + 2];
    }
  }
  for (int c = 0; c < 3; ++c) stats.mean[c] = sum[c] / static_cast<double>(count);

  double sq[3] = {0.0, 0.0, 0.0};
  for (const auto& t : training) {
    for (std::size_t i = 0; i < t.data.size(); i += 3) {
      for (int c = 0; c < 3; ++c) {
        const double d = t.data[i + c] - stats.mean[c];
        sq[c] += d * d;
      }
    }
  }
  for (int c = 0; c < 3; ++c) {
    stats.std_dev[c] = std::max(std::sqrt(sq[c] / static_cast<double>(count)), kSigmaFloor);
  }
  return stats;
}

void apply_channel_stats(LogmelTensor& feature, const ChannelStats& stats) {
  for (std::size_t i = 0; i < feature.data.size(); i += 3) {
    for (int c = 0; c < 3; ++c) {
      feature.data[i + c] =
          static_cast<float>((feature.data[i + c] - stats.mean[c]) / stats.std_dev[c]);
    }
  }
}

void apply_channel_stats(std::vector<LogmelTensor>& features, const ChannelStats& stats) {
  for (auto& f : features) apply_channel_stats(f, stats);
}

void unapply_channel_stats(LogmelTensor& feature, const ChannelStats& stats) {
  for (std::size_t i = 0; i < feature.data.size(); i += 3) {
    for (int c = 0; c < 3; ++c) {
      feature.data[i + c] =
          static_cast<float>(feature.data[i + c] * stats.std_dev[c] + stats.mean[c]);
    }
  }
}

void save_channel_stats(const std::filesystem::path& path, const ChannelStats& stats) {
  std::ofstream out(path);
  if (!out) throw DataError("stats: cannot write " + path.string());
  char buf[64];
  for (int c = 0; c < 3; ++c) {
    std::snprintf(buf, sizeof buf, "%.17g", stats.mean[c]);
    out << "channel" << c << ".mean = " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.17g", stats.std_dev[c]);
    out << "channel" << c << ".std = " << buf << '\n';
  }
}

ChannelStats load_channel_stats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("stats: cannot open " + path.string());
  ChannelStats stats;
  std::string key, eq;
  double value;
  bool seen[6] = {};
  while (in >> key >> eq >> value) {
    for (int c = 0; c < 3; ++c) {
      if (key == "channel" + std::to_string(c) + ".mean") {
        stats.mean[c] = value;
        seen[c * 2] = true;
      } else if (key == "channel" + std::to_string(c) + ".std") {
        stats.std_dev[c] = value;
        seen[c * 2 + 1] = true;
      }
    }
  }
  for (const bool s : seen) {
    if (!s) throw FormatError("stats: missing entries in " + path.string());
  }
  return stats;
}

}  // namespace ssc::dsp
