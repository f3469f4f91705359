#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ssc/augment.hpp"
#include "ssc/model.hpp"
#include "ssc/optimizer.hpp"

namespace ssc::model {

/// All analysis windows of one clip, with its label (used for clip-level
/// validation accuracy).
struct ClipWindows {
  std::string clip_id;
  int label = 0;
  std::vector<dsp::LogmelTensor> windows;
};

struct TrainOptions {
  int epochs = 100;
  int batch_size = 16;
  std::uint64_t seed = 0;
  nn::LrSchedule lr;
  float momentum = 0.9f;
  augment::MixupConfig mixup;
};

struct EpochRecord {
  int epoch = 0;  // 1-based in logs
  double lr = 0.0;
  double train_loss = 0.0;
  double train_acc = 0.0;
  double val_acc = -1.0;  // -1 when no validation set
};

struct TrainResult {
  std::vector<EpochRecord> log;
  int best_epoch = 0;       // epoch whose params the model ends up holding
  double best_val_acc = -1.0;
};

/// Mini-batch SGD training of one branch. Mixup (when enabled) mixes
/// normalized features and one-hot labels per batch. On completion the model
/// holds the best-validation parameters (final parameters when there is no
/// validation set). A non-finite loss or gradient restores the last completed
/// epoch's parameters and rethrows NumericError.
TrainResult train_branch(BranchModel& model, const std::vector<dsp::LogmelTensor>& train_features,
                         const std::vector<int>& train_labels,
                         const std::vector<ClipWindows>& val_clips, const TrainOptions& options);

/// Write the per-epoch log as CSV: epoch, lr, train_loss, train_acc, val_acc.
void write_train_log(const std::filesystem::path& path, const TrainResult& result);

}  // namespace ssc::model
