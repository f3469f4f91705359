// subspec - batch CLI for sub-spectrogram environmental sound classification.
//
// Subcommands: gen-toy, extract, train, evaluate, sweep, fusion-curve.
// Exit codes: 0 success, 1 configuration error, 2 data error, 3 numeric failure.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ssc/commands.hpp"

namespace {

using ssc::harness::ExperimentConfig;

ExperimentConfig resolve_config(const std::string& config_path, std::optional<std::uint64_t> seed,
                                std::optional<std::string> out_dir, std::optional<int> threads) {
  ExperimentConfig cfg = ssc::harness::load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.out_dir = *out_dir;
  if (threads) cfg.threads = *threads;
  return cfg;
}

std::vector<double> parse_weight_list(const std::string& text) {
  std::vector<double> weights;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      weights.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ssc::ConfigError("--weights: bad number '" + item + "'");
    }
  }
  return weights;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-spectrogram segmentation sound classification toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  app.add_option("--config", config_path, "Experiment config file")->required();
  app.add_option("--seed", seed, "Override [run] seed");
  app.add_option("--out", out_dir, "Override [run] out_dir");
  app.add_option("--threads", threads, "Override [run] threads");

  auto* gen_toy = app.add_subcommand("gen-toy", "Generate the synthetic mini dataset");
  auto* extract = app.add_subcommand("extract", "Extract per-band Logmel feature caches");
  auto* train = app.add_subcommand("train", "Train one classifier branch per band");
  auto* evaluate = app.add_subcommand("evaluate", "Report per-fold accuracy of the trained branches");
  std::string weights_arg;
  evaluate->add_option("--weights", weights_arg,
                       "Explicit fusion weights, e.g. 0.4,0.2,0.2,0.2 (default: grid search on "
                       "the validation fold)");
  auto* sweep = app.add_subcommand("sweep", "Run the configured scheme/ablation matrix");
  auto* curve = app.add_subcommand("fusion-curve", "Accuracy vs first-branch weight (two bands)");

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = resolve_config(config_path, seed, out_dir, threads);

    if (gen_toy->parsed()) {
      const int n = ssc::harness::cmd_gen_toy(cfg);
      std::printf("gen-toy: wrote %d clips to %s\n", n, cfg.dataset_root.c_str());
    } else if (extract->parsed()) {
      const auto result = ssc::harness::cmd_extract(cfg);
      for (std::size_t b = 0; b < result.cache_files.size(); ++b) {
        std::printf("extract: band %zu -> %s (%zu records)%s\n", b,
                    result.cache_files[b].string().c_str(), result.records_per_band[b],
                    result.bands_computed == 0 ? " [cached]" : "");
      }
    } else if (train->parsed()) {
      const auto result = ssc::harness::cmd_train(cfg);
      for (std::size_t b = 0; b < result.checkpoints.size(); ++b) {
        const auto& log = result.per_band[b].log;
        std::printf("train: band %zu -> %s (%zu epochs, final train_acc %.4f, best val_acc "
                    "%.4f at epoch %d)\n",
                    b, result.checkpoints[b].string().c_str(), log.size(),
                    log.empty() ? 0.0 : log.back().train_acc, result.per_band[b].best_val_acc,
                    result.per_band[b].best_epoch);
      }
    } else if (evaluate->parsed()) {
      std::optional<ssc::fusion::FusionWeights> weights;
      if (!weights_arg.empty()) {
        weights = ssc::fusion::FusionWeights{parse_weight_list(weights_arg)};
      }
      const auto row = ssc::harness::cmd_evaluate(cfg, weights);
      std::printf("evaluate: test_acc %.4f val_acc %.4f mean_acc %.4f (report: evaluate.csv)\n",
                  row.accuracy, row.val_acc, row.mean_acc);
    } else if (sweep->parsed()) {
      const auto rows = ssc::harness::cmd_sweep(cfg);
      std::size_t failed = 0;
      for (const auto& row : rows) {
        if (row.status != "ok") ++failed;
      }
      std::printf("sweep: %zu rows (%zu failed) -> %s\n", rows.size(), failed,
                  cfg.sweep_report_name.c_str());
      if (failed == rows.size()) return 2;
    } else if (curve->parsed()) {
      const auto points = ssc::harness::cmd_fusion_curve(cfg);
      std::printf("fusion-curve: %zu points -> fig3.csv\n", points.size());
    }
    return 0;
  } catch (const ssc::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const ssc::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
