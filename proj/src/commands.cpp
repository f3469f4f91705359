#include "ssc/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "ssc/dataset.hpp"
#include "ssc/feature_cache.hpp"
#include "ssc/toy.hpp"

namespace ssc::harness {

namespace {

std::string fmt_hz(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

audio::ScanLayout scan_layout(const ExperimentConfig& cfg) {
  audio::ScanLayout layout;
  if (!cfg.csv_index.empty()) layout.csv_index = cfg.csv_index;
  return layout;
}

nn::NetworkKind network_kind(const std::string& name) {
  return name == "cnn" ? nn::NetworkKind::kCnnOnly : nn::NetworkKind::kCrnn;
}

/// Features of one band grouped per clip, windows in order.
using BranchData = std::map<std::string, std::vector<dsp::LogmelTensor>>;

struct LoadedFeatures {
  audio::DatasetManifest manifest;
  std::vector<BranchData> bands;
};

LoadedFeatures load_features(const ExperimentConfig& cfg) {
  LoadedFeatures data;
  data.manifest = audio::scan_dataset(cfg.dataset_root, scan_layout(cfg));
  const int n_bands = cfg.band_scheme().n_bands();
  data.bands.resize(static_cast<std::size_t>(n_bands));
  for (int b = 0; b < n_bands; ++b) {
    const auto path = band_cache_path(cfg, b);
    if (!std::filesystem::is_regular_file(path)) {
      throw DataError("missing feature cache " + path.string() +
                      "; run `subspec extract` with this config first");
    }
    for (auto& tensor : dsp::read_feature_cache(path)) {
      tensor.band_index = b;  // position within the active scheme
      data.bands[static_cast<std::size_t>(b)][tensor.clip_id].push_back(std::move(tensor));
    }
    for (auto& [id, windows] : data.bands[static_cast<std::size_t>(b)]) {
      std::sort(windows.begin(), windows.end(),
                [](const auto& a, const auto& bb) { return a.window_index < bb.window_index; });
    }
  }
  for (const auto& clip : data.manifest.clips) {
    for (int b = 0; b < n_bands; ++b) {
      const auto& band = data.bands[static_cast<std::size_t>(b)];
      if (band.find(clip.clip_id) == band.end()) {
        throw DataError("feature cache for band " + std::to_string(b) + " has no records for '" +
                        clip.clip_id + "'; re-run `subspec extract`");
      }
    }
  }
  return data;
}

std::set<int> train_folds(const ExperimentConfig& cfg, const audio::DatasetManifest& manifest) {
  if (!manifest.folds.count(cfg.test_fold) || !manifest.folds.count(cfg.val_fold)) {
    throw ConfigError("fold policy: dataset has no fold " +
                      std::to_string(manifest.folds.count(cfg.test_fold) ? cfg.val_fold
                                                                         : cfg.test_fold));
  }
  std::set<int> folds = manifest.folds;
  folds.erase(cfg.test_fold);
  folds.erase(cfg.val_fold);
  if (folds.empty()) throw ConfigError("fold policy: no training folds left");
  return folds;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string join_cuts_khz(const std::vector<double>& cuts_hz) {
  if (cuts_hz.empty()) return "-";
  std::string s;
  char buf[64];
  for (std::size_t i = 0; i < cuts_hz.size(); ++i) {
    if (i) s += ",";
    std::snprintf(buf, sizeof buf, "%g", cuts_hz[i] / 1000.0);
    s += buf;
  }
  return s;
}

std::string join_weights(const std::vector<double>& w) {
  std::string s;
  char buf[64];
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    std::snprintf(buf, sizeof buf, "%g", w[i]);
    s += buf;
  }
  return s;
}

ReportRow skeleton_row(const ExperimentConfig& cfg) {
  ReportRow row;
  row.n_ss = cfg.band_scheme().n_bands();
  row.f_l_hz = cfg.cut_points_hz.front();
  row.f_h_hz = cfg.cut_points_hz.back();
  row.interior_cuts_hz.assign(cfg.cut_points_hz.begin() + 1, cfg.cut_points_hz.end() - 1);
  row.network = cfg.network;
  row.mixup = cfg.mixup_enabled;
  row.fusion = cfg.fusion_enabled;
  row.test_fold = cfg.test_fold;
  row.val_fold = cfg.val_fold;
  row.config_hash = config_hash(cfg);
  row.seed = cfg.seed;
  return row;
}

}  // namespace

std::filesystem::path features_dir(const ExperimentConfig& cfg) {
  return std::filesystem::path(cfg.out_dir) / "features" / feature_config_hash(cfg);
}

std::filesystem::path models_dir(const ExperimentConfig& cfg) {
  return std::filesystem::path(cfg.out_dir) / "models" / config_hash(cfg);
}

std::filesystem::path reports_dir(const ExperimentConfig& cfg) {
  return std::filesystem::path(cfg.out_dir) / "reports";
}

std::filesystem::path band_cache_path(const ExperimentConfig& cfg, int band) {
  const auto& cuts = cfg.cut_points_hz;
  return features_dir(cfg) / ("band_" + fmt_hz(cuts[static_cast<std::size_t>(band)]) + "-" +
                              fmt_hz(cuts[static_cast<std::size_t>(band) + 1]) + ".slm");
}

std::filesystem::path checkpoint_path(const ExperimentConfig& cfg, int band) {
  return models_dir(cfg) / ("band" + std::to_string(band) + ".ckpt");
}

std::filesystem::path stats_path(const ExperimentConfig& cfg, int band) {
  return models_dir(cfg) / ("stats_band" + std::to_string(band) + ".txt");
}

ExtractResult cmd_extract(const ExperimentConfig& cfg) {
  cfg.validate();
  const dsp::BandScheme scheme = cfg.band_scheme();
  const dsp::WindowPolicy policy = cfg.window_policy();
  const auto manifest = audio::scan_dataset(cfg.dataset_root, scan_layout(cfg));

  ExtractResult result;
  std::vector<int> missing;
  for (int b = 0; b < scheme.n_bands(); ++b) {
    const auto path = band_cache_path(cfg, b);
    result.cache_files.push_back(path);
    if (!std::filesystem::is_regular_file(path)) missing.push_back(b);
  }

  if (!missing.empty()) {
    std::filesystem::create_directories(features_dir(cfg));
    std::vector<std::unique_ptr<dsp::FeatureCacheWriter>> writers;
    for (const int b : missing) {
      writers.push_back(std::make_unique<dsp::FeatureCacheWriter>(band_cache_path(cfg, b)));
    }

    const std::size_t n_clips = manifest.clips.size();
    const int n_threads = std::max(1, cfg.threads);
    const std::size_t block = static_cast<std::size_t>(n_threads) * 8;
    std::vector<std::string> failures;

    // Banks for the missing bands only; each window's spectrum is shared.
    std::vector<dsp::MelFilterBank> banks;
    for (const int b : missing) {
      banks.push_back(dsp::build_mel_filterbank(cfg.spec,
                                                cfg.cut_points_hz[static_cast<std::size_t>(b)],
                                                cfg.cut_points_hz[static_cast<std::size_t>(b) + 1]));
    }

    for (std::size_t start = 0; start < n_clips; start += block) {
      const std::size_t end = std::min(n_clips, start + block);
      std::vector<std::vector<dsp::LogmelTensor>> block_features(end - start);
      std::vector<std::string> block_errors(end - start);

      auto worker = [&](std::size_t worker_id) {
        for (std::size_t i = start + worker_id; i < end; i += static_cast<std::size_t>(n_threads)) {
          const auto& ref = manifest.clips[i];
          try {
            const audio::AudioClip clip = audio::load_clip(ref);
            if (clip.sample_rate_hz != cfg.spec.sample_rate_hz) {
              throw DataError("sample rate " + std::to_string(clip.sample_rate_hz) +
                              " Hz, expected " + std::to_string(cfg.spec.sample_rate_hz));
            }
            auto& out = block_features[i - start];
            const int n_windows =
                dsp::window_count(dsp::total_frames(clip.samples.size(), cfg.spec), policy);
            const int hop = cfg.spec.hop_samples();
            const std::size_t window_samples =
                static_cast<std::size_t>(cfg.spec.n_frames - 1) * hop +
                static_cast<std::size_t>(cfg.spec.fft_size);
            std::vector<double> padded;
            for (int w = 0; w < n_windows; ++w) {
              const std::size_t offset =
                  static_cast<std::size_t>(w) * policy.hop_frames * static_cast<std::size_t>(hop);
              dsp::EnergySpectrum spectrum;
              if (offset + window_samples <= clip.samples.size()) {
                spectrum = dsp::stft_energy(clip, cfg.spec, w, policy);
              } else {
                padded.assign(window_samples, 0.0);
                if (offset < clip.samples.size()) {
                  std::copy(clip.samples.begin() + static_cast<std::ptrdiff_t>(offset),
                            clip.samples.end(), padded.begin());
                }
                spectrum = dsp::stft_energy_buffer(padded.data(), padded.size(), cfg.spec);
              }
              for (std::size_t mb = 0; mb < banks.size(); ++mb) {
                dsp::LogmelTensor tensor =
                    dsp::delta_channels(dsp::logmel(spectrum, banks[mb], cfg.spec));
                tensor.band_index = missing[mb];
                tensor.window_index = w;
                tensor.clip_id = clip.clip_id;
                out.push_back(std::move(tensor));
              }
            }
          } catch (const std::exception& e) {
            block_errors[i - start] = ref.path.string() + ": " + e.what();
          }
        }
      };

      if (n_threads == 1) {
        worker(0);
      } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker, static_cast<std::size_t>(w));
        for (auto& th : pool) th.join();
      }

      for (std::size_t i = 0; i < end - start; ++i) {
        if (!block_errors[i].empty()) {
          failures.push_back(block_errors[i]);
          continue;
        }
        for (const auto& tensor : block_features[i]) {
          // Tensors for missing band mb arrive interleaved per window.
          for (std::size_t mb = 0; mb < missing.size(); ++mb) {
            if (tensor.band_index == missing[mb]) writers[mb]->add(tensor);
          }
        }
      }
    }

    if (!failures.empty()) {
      writers.clear();
      for (const int b : missing) std::filesystem::remove(band_cache_path(cfg, b));
      std::ostringstream msg;
      msg << "extract: " << failures.size() << " file(s) failed:";
      for (const auto& f : failures) msg << "\n  " << f;
      throw DataError(msg.str());
    }
    for (auto& w : writers) w->close();
    result.bands_computed = static_cast<int>(missing.size());
  }

  for (int b = 0; b < scheme.n_bands(); ++b) {
    result.records_per_band.push_back(dsp::count_feature_cache_records(result.cache_files[b]));
  }
  return result;
}

TrainCmdResult cmd_train(const ExperimentConfig& cfg) {
  cfg.validate();
  LoadedFeatures data = load_features(cfg);
  const std::set<int> trains = train_folds(cfg, data.manifest);
  const int n_bands = cfg.band_scheme().n_bands();

  std::filesystem::create_directories(models_dir(cfg));
  save_config(models_dir(cfg) / "config.ini", cfg);

  TrainCmdResult result;
  for (int b = 0; b < n_bands; ++b) {
    BranchData& band = data.bands[static_cast<std::size_t>(b)];

    std::vector<dsp::LogmelTensor> train_features;
    std::vector<int> train_labels;
    std::vector<model::ClipWindows> val_clips;
    for (const auto& clip : data.manifest.clips) {
      const auto& windows = band.at(clip.clip_id);
      if (trains.count(clip.fold)) {
        for (const auto& w : windows) {
          train_features.push_back(w);
          train_labels.push_back(clip.class_index);
        }
      } else if (clip.fold == cfg.val_fold) {
        val_clips.push_back({clip.clip_id, clip.class_index, windows});
      }
    }

    const dsp::ChannelStats stats = dsp::compute_channel_stats(train_features);
    dsp::save_channel_stats(stats_path(cfg, b), stats);
    dsp::apply_channel_stats(train_features, stats);
    for (auto& clip : val_clips) dsp::apply_channel_stats(clip.windows, stats);

    model::BranchModel branch(network_kind(cfg.network), data.manifest.n_classes, b);
    Rng init_rng(derive_seed(cfg.seed, "init.band" + std::to_string(b)));
    branch.init_params(init_rng);

    model::TrainOptions options;
    options.epochs = cfg.epochs;
    options.batch_size = cfg.batch_size;
    options.seed = derive_seed(cfg.seed, "train.band" + std::to_string(b));
    options.lr = nn::LrSchedule{cfg.learning_rate, cfg.lr_decay_factor,
                                cfg.lr_decay_period_epochs};
    options.momentum = static_cast<float>(cfg.momentum);
    options.mixup = augment::MixupConfig{cfg.mixup_alpha, cfg.mixup_enabled, cfg.seed};

    try {
      result.per_band.push_back(
          model::train_branch(branch, train_features, train_labels, val_clips, options));
    } catch (const NumericError&) {
      branch.save(checkpoint_path(cfg, b));  // last-good parameters
      throw;
    }
    branch.save(checkpoint_path(cfg, b));
    model::write_train_log(models_dir(cfg) / ("train_band" + std::to_string(b) + ".csv"),
                           result.per_band.back());
    result.checkpoints.push_back(checkpoint_path(cfg, b));
  }
  return result;
}

namespace {

/// Clip-level branch scores for every manifest clip, bands normalized with
/// their persisted stats and scored with their checkpointed models.
struct EvaluationScores {
  std::vector<std::vector<fusion::ScoreVector>> clip_scores;  // [clip][band]
  std::vector<int> labels;
  std::vector<int> folds;
};

EvaluationScores score_all_clips(const ExperimentConfig& cfg, LoadedFeatures& data) {
  const int n_bands = cfg.band_scheme().n_bands();
  EvaluationScores scores;
  scores.clip_scores.resize(data.manifest.clips.size());

  for (int b = 0; b < n_bands; ++b) {
    if (!std::filesystem::is_regular_file(checkpoint_path(cfg, b))) {
      throw DataError("missing checkpoint " + checkpoint_path(cfg, b).string() +
                      "; run `subspec train` with this config first");
    }
    const dsp::ChannelStats stats = dsp::load_channel_stats(stats_path(cfg, b));
    model::BranchModel branch(network_kind(cfg.network), data.manifest.n_classes, b);
    branch.load(checkpoint_path(cfg, b));

    for (std::size_t c = 0; c < data.manifest.clips.size(); ++c) {
      auto windows = data.bands[static_cast<std::size_t>(b)].at(data.manifest.clips[c].clip_id);
      dsp::apply_channel_stats(windows, stats);
      scores.clip_scores[c].push_back(model::predict_clip_single(branch, windows));
    }
  }
  for (const auto& clip : data.manifest.clips) {
    scores.labels.push_back(clip.class_index);
    scores.folds.push_back(clip.fold);
  }
  return scores;
}

}  // namespace

ReportRow cmd_evaluate(const ExperimentConfig& cfg,
                       const std::optional<fusion::FusionWeights>& weights) {
  cfg.validate();
  LoadedFeatures data = load_features(cfg);
  EvaluationScores scores = score_all_clips(cfg, data);
  const int n_bands = cfg.band_scheme().n_bands();

  fusion::FusionWeights w;
  if (weights) {
    w = *weights;
    if (w.n_branches() != n_bands) {
      throw ConfigError("evaluate: " + std::to_string(w.n_branches()) + " weights for " +
                        std::to_string(n_bands) + " bands");
    }
    w.validate();
  } else if (cfg.fusion_enabled) {
    std::vector<std::vector<fusion::ScoreVector>> val_scores;
    std::vector<int> val_labels;
    for (std::size_t c = 0; c < scores.clip_scores.size(); ++c) {
      if (scores.folds[c] == cfg.val_fold) {
        val_scores.push_back(scores.clip_scores[c]);
        val_labels.push_back(scores.labels[c]);
      }
    }
    const fusion::FusionSearchResult search =
        fusion::grid_search_weights(val_scores, val_labels, cfg.fusion_grid_step);
    w = search.best_weights;
    std::filesystem::create_directories(reports_dir(cfg));
    fusion::write_surface_csv(reports_dir(cfg) / "fusion_surface.csv", search);
  } else {
    w.weights.assign(static_cast<std::size_t>(n_bands), 1.0 / n_bands);
  }

  std::vector<fusion::ScoreVector> fused;
  fused.reserve(scores.clip_scores.size());
  for (const auto& per_branch : scores.clip_scores) {
    fused.push_back(fusion::fuse(per_branch, w));
  }

  ReportRow row = skeleton_row(cfg);
  row.weights = w.weights;
  double acc_sum = 0.0;
  for (const int fold : data.manifest.folds) {
    std::vector<fusion::ScoreVector> fold_preds;
    std::vector<int> fold_labels;
    for (std::size_t c = 0; c < fused.size(); ++c) {
      if (scores.folds[c] == fold) {
        fold_preds.push_back(fused[c]);
        fold_labels.push_back(scores.labels[c]);
      }
    }
    const double acc = fusion::accuracy(fold_preds, fold_labels);
    row.per_fold_acc.emplace_back(fold, acc);
    acc_sum += acc;
    if (fold == cfg.test_fold) {
      row.accuracy = acc;
    }
    if (fold == cfg.val_fold) row.val_acc = acc;
  }
  row.mean_acc = acc_sum / static_cast<double>(data.manifest.folds.size());

  std::filesystem::create_directories(reports_dir(cfg));
  write_report_csv(reports_dir(cfg) / "evaluate.csv", {row});
  return row;
}

std::vector<ReportRow> cmd_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.sweep_schemes.empty()) {
    throw ConfigError("sweep: no schemes configured ([sweep] schemes)");
  }
  std::vector<ReportRow> rows;
  for (const auto& scheme : cfg.sweep_schemes) {
    for (const auto& network : cfg.sweep_networks) {
      for (const bool mixup : cfg.sweep_mixup) {
        for (const bool fusion_on : cfg.sweep_fusion) {
          ExperimentConfig derived = cfg;
          derived.cut_points_hz = scheme;
          derived.network = network;
          derived.mixup_enabled = mixup;
          derived.fusion_enabled = fusion_on;
          try {
            cmd_extract(derived);
            cmd_train(derived);
            rows.push_back(cmd_evaluate(derived));
          } catch (const Error& e) {
            ReportRow row = skeleton_row(derived);
            row.status = e.what();
            rows.push_back(row);
          }
        }
      }
    }
  }
  std::filesystem::create_directories(reports_dir(cfg));
  write_report_csv(reports_dir(cfg) / cfg.sweep_report_name, rows);
  return rows;
}

std::vector<CurvePoint> cmd_fusion_curve(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.band_scheme().n_bands() != 2) {
    throw ConfigError("fusion-curve: requires a two-band scheme, got " +
                      std::to_string(cfg.band_scheme().n_bands()) + " bands");
  }
  LoadedFeatures data = load_features(cfg);
  EvaluationScores scores = score_all_clips(cfg, data);

  std::vector<std::vector<fusion::ScoreVector>> test_scores;
  std::vector<int> test_labels;
  for (std::size_t c = 0; c < scores.clip_scores.size(); ++c) {
    if (scores.folds[c] == cfg.test_fold) {
      test_scores.push_back(scores.clip_scores[c]);
      test_labels.push_back(scores.labels[c]);
    }
  }
  if (test_scores.empty()) throw DataError("fusion-curve: test fold has no clips");

  std::vector<CurvePoint> curve;
  for (int i = 0; i <= 10; ++i) {
    fusion::FusionWeights w;
    w.weights = {i * 0.1, (10 - i) * 0.1};
    std::vector<fusion::ScoreVector> fused;
    for (const auto& per_branch : test_scores) fused.push_back(fusion::fuse(per_branch, w));
    curve.push_back({i * 0.1, fusion::accuracy(fused, test_labels)});
  }

  std::filesystem::create_directories(reports_dir(cfg));
  std::ofstream out(reports_dir(cfg) / "fig3.csv");
  if (!out) throw DataError("fusion-curve: cannot write fig3.csv");
  out << "omega1,accuracy\n";
  char buf[64];
  for (const auto& p : curve) {
    std::snprintf(buf, sizeof buf, "%g,%.17g\n", p.omega1, p.accuracy);
    out << buf;
  }
  return curve;
}

int cmd_gen_toy(const ExperimentConfig& cfg) {
  return generate_toy_dataset(cfg.dataset_root, cfg.seed);
}

void write_report_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows) {
  std::ofstream out(path);
  if (!out) throw DataError("report: cannot write " + path.string());
  out << "n_ss,f_l_khz,f_i_khz,f_h_khz,weights,accuracy,network,mixup,fusion,per_fold_acc,"
         "mean_acc,val_acc,test_fold,val_fold,config_hash,seed,code_version,status\n";
  char buf[128];
  for (const auto& r : rows) {
    out << r.n_ss << ',';
    std::snprintf(buf, sizeof buf, "%g,", r.f_l_hz / 1000.0);
    out << buf;
    out << csv_quote(join_cuts_khz(r.interior_cuts_hz)) << ',';
    std::snprintf(buf, sizeof buf, "%g,", r.f_h_hz / 1000.0);
    out << buf;
    out << csv_quote(join_weights(r.weights)) << ',';
    std::snprintf(buf, sizeof buf, "%.17g,", r.accuracy);
    out << buf;
    out << r.network << ',' << (r.mixup ? "on" : "off") << ',' << (r.fusion ? "on" : "off")
        << ',';
    std::string folds;
    for (std::size_t i = 0; i < r.per_fold_acc.size(); ++i) {
      if (i) folds += ";";
      std::snprintf(buf, sizeof buf, "%d:%.17g", r.per_fold_acc[i].first,
                    r.per_fold_acc[i].second);
      folds += buf;
    }
    out << csv_quote(folds) << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", r.mean_acc, r.val_acc);
    out << buf;
    out << r.test_fold << ',' << r.val_fold << ',' << r.config_hash << ',' << r.seed << ','
        << kCodeVersion << ',' << csv_quote(r.status) << '\n';
  }
}

}  // namespace ssc::harness
