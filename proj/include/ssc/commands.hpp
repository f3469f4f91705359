#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssc/config.hpp"
#include "ssc/fusion.hpp"
#include "ssc/train.hpp"

namespace ssc::harness {

// Output layout under cfg.out_dir:
//   features/<feature_hash>/band_<lo>-<hi>.slm   one cache file per band range
//   models/<config_hash>/band<i>.ckpt            branch checkpoints
//   models/<config_hash>/stats_band<i>.txt       normalization statistics
//   models/<config_hash>/train_band<i>.csv       training logs
//   reports/*.csv                                evaluate / sweep / curve output
std::filesystem::path features_dir(const ExperimentConfig& cfg);
std::filesystem::path models_dir(const ExperimentConfig& cfg);
std::filesystem::path reports_dir(const ExperimentConfig& cfg);
std::filesystem::path band_cache_path(const ExperimentConfig& cfg, int band);
std::filesystem::path checkpoint_path(const ExperimentConfig& cfg, int band);
std::filesystem::path stats_path(const ExperimentConfig& cfg, int band);

struct ExtractResult {
  std::vector<std::filesystem::path> cache_files;
  std::vector<std::size_t> records_per_band;
  int bands_computed = 0;  // 0 when everything was already cached
};

/// Extract Logmel features for every band of the configured scheme. Band
/// caches are keyed by (feature config, band range); present files are reused
/// untouched, missing bands are computed in one pass that shares each
/// window's energy spectrum across bands.
ExtractResult cmd_extract(const ExperimentConfig& cfg);

struct TrainCmdResult {
  std::vector<model::TrainResult> per_band;
  std::vector<std::filesystem::path> checkpoints;
};

/// Train one branch per band on the training folds (all folds minus test and
/// validation), checkpointing the best-validation parameters.
TrainCmdResult cmd_train(const ExperimentConfig& cfg);

/// One row of the experiment report: band layout, weights and accuracy
/// first, then ablation flags, per-fold numbers and provenance.
struct ReportRow {
  int n_ss = 0;
  double f_l_hz = 0.0;
  double f_h_hz = 0.0;
  std::vector<double> interior_cuts_hz;
  std::vector<double> weights;
  double accuracy = 0.0;  // test-fold accuracy, the headline number
  std::string network = "crnn";
  bool mixup = false;
  bool fusion = false;
  std::vector<std::pair<int, double>> per_fold_acc;
  double mean_acc = 0.0;
  double val_acc = 0.0;
  int test_fold = 0;
  int val_fold = 0;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string status = "ok";
};

/// Evaluate the trained branches: per-fold and mean clip accuracy under the
/// given weights (default: grid search on the validation fold when fusion is
/// enabled, uniform weights otherwise). Appends reports/evaluate.csv.
ReportRow cmd_evaluate(const ExperimentConfig& cfg,
                       const std::optional<fusion::FusionWeights>& weights = std::nullopt);

/// Run extract/train/evaluate for every (scheme x network x mixup x fusion)
/// combination; failed rows carry the error in their status column.
std::vector<ReportRow> cmd_sweep(const ExperimentConfig& cfg);

struct CurvePoint {
  double omega1 = 0.0;
  double accuracy = 0.0;
};

/// Test accuracy as a function of the first branch weight for a two-band
/// scheme (11 points, step 0.1). Writes reports/fig3.csv.
std::vector<CurvePoint> cmd_fusion_curve(const ExperimentConfig& cfg);

/// Generate the bundled synthetic dataset into cfg.dataset_root.
int cmd_gen_toy(const ExperimentConfig& cfg);

void write_report_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

}  // namespace ssc::harness
