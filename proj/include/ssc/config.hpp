#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ssc/dsp.hpp"

namespace ssc::harness {

inline constexpr const char* kCodeVersion = "0.1.0";

/// One experiment: dataset, feature, augmentation, training, fold and fusion
/// settings. Serializes to a sectioned key-value file; the round trip through
/// parse/serialize is lossless and the canonical serialization is hashed for
/// provenance and cache keys.
struct ExperimentConfig {
  int config_version = 1;

  // [dataset]
  std::string dataset_root = "toy_data";
  std::string csv_index;  // empty: auto-detect index.csv, else filenames

  // [spectrogram]
  dsp::SpectrogramConfig spec;

  // [windowing]
  int hop_frames = 30;

  // [bands]
  std::vector<double> cut_points_hz = {0.0, 22050.0};

  // [mixup]
  bool mixup_enabled = true;
  double mixup_alpha = 0.2;

  // [training]
  std::string network = "crnn";  // crnn | cnn
  int epochs = 100;
  int batch_size = 200;
  double learning_rate = 0.1;
  double lr_decay_factor = 10.0;
  int lr_decay_period_epochs = 100;
  double momentum = 0.9;

  // [folds]
  int test_fold = 5;
  int val_fold = 4;

  // [fusion]
  bool fusion_enabled = true;
  double fusion_grid_step = 0.1;

  // [run]
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int threads = 1;

  // [sweep]
  std::vector<std::vector<double>> sweep_schemes;
  std::vector<std::string> sweep_networks = {"crnn"};
  std::vector<bool> sweep_mixup = {true};
  std::vector<bool> sweep_fusion = {true};
  std::string sweep_report_name = "sweep.csv";

  dsp::BandScheme band_scheme() const { return dsp::BandScheme{cut_points_hz}; }
  dsp::WindowPolicy window_policy() const {
    return dsp::WindowPolicy{spec.n_frames, hop_frames, true};
  }
  void validate() const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical serialization: fixed section and key order, 17-digit doubles.
std::string serialize_config(const ExperimentConfig& cfg);
void save_config(const std::filesystem::path& path, const ExperimentConfig& cfg);

/// Hash of the canonical serialization (16 hex digits).
std::string config_hash(const ExperimentConfig& cfg);

/// Hash of the feature-relevant subset (dataset + spectrogram + windowing);
/// band caches are keyed by this so unrelated training settings do not force
/// re-extraction.
std::string feature_config_hash(const ExperimentConfig& cfg);

}  // namespace ssc::harness
