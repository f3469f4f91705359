#pragma once

#include <filesystem>
#include <fstream>
#include <vector>

#include "ssc/dsp.hpp"

namespace ssc::dsp {

/// Streaming writer for the "SSLM" cache format: magic bytes, format version
/// u16, then per record a header (clip_id length + bytes, window u32, band
/// u16, dims u32 x 3) followed by the little-endian float32 payload,
/// frame-major.
class FeatureCacheWriter {
 public:
  explicit FeatureCacheWriter(const std::filesystem::path& path);

  void add(const LogmelTensor& tensor);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream stream_;
};

void write_feature_cache(const std::filesystem::path& path,
                         const std::vector<LogmelTensor>& tensors);

/// Read a cache written by write_feature_cache. Throws FormatError on a bad
/// magic/version and TruncationError on short reads.
std::vector<LogmelTensor> read_feature_cache(const std::filesystem::path& path);

/// Count records by walking headers only (payloads are seeked over).
std::size_t count_feature_cache_records(const std::filesystem::path& path);

/// Per-channel standardization statistics (sigma already floored at 1e-8).
struct ChannelStats {
  double mean[3] = {0.0, 0.0, 0.0};
  double std_dev[3] = {1.0, 1.0, 1.0};
};

/// Compute per-channel mean/std over a training collection (fixed summation
/// order). Throws DataError on an empty collection.
ChannelStats compute_channel_stats(const std::vector<LogmelTensor>& training);

void apply_channel_stats(std::vector<LogmelTensor>& features, const ChannelStats& stats);
void apply_channel_stats(LogmelTensor& feature, const ChannelStats& stats);

/// Invert apply_channel_stats (used by the round-trip check).
void unapply_channel_stats(LogmelTensor& feature, const ChannelStats& stats);

/// Key-value text persistence, 17 significant digits.
void save_channel_stats(const std::filesystem::path& path, const ChannelStats& stats);
ChannelStats load_channel_stats(const std::filesystem::path& path);

}  // namespace ssc::dsp
