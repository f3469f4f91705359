// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any hard
// criterion fails (criterion 8 is report-only).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "../gradcheck_util.hpp"
#include "../oracles.hpp"
#include "ssc/commands.hpp"
#include "ssc/dataset.hpp"
#include "ssc/feature_cache.hpp"
#include "ssc/loss.hpp"
#include "ssc/toy.hpp"

using namespace ssc;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail, bool hard = true) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : (hard ? "FAIL" : "INFO"), criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass && hard) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "ssc_acceptance";
  return dir;
}

// --------------------------------------------------------------------------
// Criterion 1: optimized stft_energy vs the naive direct-sum transform
// oracle, 20 random 60-frame signals, T = 1024, rel err < 1e-6 in 64-bit.
// --------------------------------------------------------------------------
void criterion_1() {
  dsp::SpectrogramConfig cfg;  // T=1024, N=60
  Rng rng(20250101);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> samples(61 * 512);
    for (double& s : samples) s = rng.uniform(-1.0, 1.0);
    const dsp::EnergySpectrum spec = dsp::stft_energy_buffer(samples.data(), samples.size(), cfg);
    const auto expected = oracle::dft_energy(samples, cfg.fft_size, cfg.n_frames);
    for (int n = 0; n < cfg.n_frames; ++n) {
      for (int m = 0; m < cfg.n_bins(); ++m) {
        const double a = spec.values.at(n, m);
        const double b = expected[n][m];
        const double denom = std::max({std::abs(a), std::abs(b), 1e-30});
        worst = std::max(worst, std::abs(a - b) / denom);
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "stft oracle equivalence, 20 signals, max rel err %.3g (< 1e-6)", worst);
  report(1, worst < 1e-6, buf);
}

// --------------------------------------------------------------------------
// Criterion 2: layer-stack shape conformance on input (60,60,3).
// --------------------------------------------------------------------------
void criterion_2() {
  auto net = nn::build_network<float>(nn::NetworkKind::kCrnn, 50);
  Rng init(1);
  net.init_params(init);
  nn::Tensor<float> x({60, 60, 3});
  Rng rng(2);
  for (float& v : x.values) v = static_cast<float>(rng.uniform(-1.0, 1.0));

  std::map<std::string, std::vector<int>> shapes;
  for (const auto& [name, shape] : net.layer_output_shapes(x)) shapes[name] = shape;
  const std::vector<std::pair<std::string, std::vector<int>>> expected = {
      {"conv1", {60, 60, 32}}, {"conv2", {60, 60, 32}}, {"pool1", {15, 30, 32}},
      {"conv3", {15, 30, 64}}, {"conv4", {15, 30, 64}}, {"pool2", {8, 30, 64}},
      {"conv5", {8, 30, 128}}, {"conv6", {8, 30, 128}}, {"pool3", {8, 15, 128}},
      {"conv7", {8, 15, 256}}, {"conv8", {8, 15, 256}}, {"pool4", {4, 8, 256}},
      {"gru1", {8, 256}},      {"gru2", {8, 256}},      {"fc1", {50}},
  };
  int matched = 0;
  std::string first_bad;
  for (const auto& [name, shape] : expected) {
    if (shapes.count(name) && shapes[name] == shape) {
      ++matched;
    } else if (first_bad.empty()) {
      first_bad = name;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "architecture shape conformance, %d/15 output sizes match%s%s",
                matched, first_bad.empty() ? "" : ", first mismatch: ", first_bad.c_str());
  report(2, matched == 15, buf);
}

// --------------------------------------------------------------------------
// Criterion 3: gradient suite. Every layer kind exhaustively on small
// tensors, plus the full CRNN on one (60,60,3) sample, all in 64-bit, central
// differences h = 1e-5, rel err < 1e-5 on coordinates with |g| > 1e-8.
// --------------------------------------------------------------------------
void criterion_3() {
  double worst = 0.0;
  int checked = 0;
  auto absorb = [&](const testutil::GradCheckResult& r) {
    worst = std::max(worst, r.max_rel_err);
    checked += r.checked;
  };

  Rng rng(33001);
  auto random_tensor = [&](std::vector<int> shape, bool off_kinks) {
    nn::Tensor<double> t(std::move(shape));
    for (double& v : t.values) {
      if (off_kinks) {
        const double magnitude = rng.uniform(0.1, 1.0);
        v = rng.uniform() < 0.5 ? -magnitude : magnitude;
      } else {
        v = rng.uniform(-1.0, 1.0);
      }
    }
    return t;
  };

  {
    nn::Conv2d<double> conv("c", 3, 3, 2, 3);
    for (auto* p : conv.params()) {
      for (double& v : p->value.values) v = rng.uniform(-0.7, 0.7);
    }
    absorb(testutil::check_layer_gradients(conv, random_tensor({6, 5, 2}, false), rng));
  }
  {
    nn::MaxPool2d<double> pool("p", 2, 2);
    absorb(testutil::check_layer_gradients(pool, random_tensor({5, 6, 3}, true), rng));
  }
  {
    nn::Relu<double> relu("r");
    absorb(testutil::check_layer_gradients(relu, random_tensor({4, 5, 2}, true), rng));
  }
  {
    nn::BiGru<double> gru("g", 3, 2);
    Rng seed(33002);
    gru.init(seed);
    absorb(testutil::check_layer_gradients(gru, random_tensor({4, 3}, false), rng));
  }
  {
    nn::Dense<double> dense("d", 6, 4);
    Rng seed(33003);
    dense.init(seed);
    absorb(testutil::check_layer_gradients(dense, random_tensor({6}, false), rng));
  }
  {
    nn::MapToSequence<double> seq("s");
    absorb(testutil::check_layer_gradients(seq, random_tensor({3, 4, 2}, false), rng));
    nn::TemporalMean<double> mean("m");
    absorb(testutil::check_layer_gradients(mean, random_tensor({5, 3}, false), rng));
  }

  // Full CRNN, one sample, 64-bit, softmax cross-entropy loss; finite
  // differences on a seeded sample of coordinates from every parameter
  // tensor (exhausting all 2.18M coordinates is ~1e15 flops).
  auto net = nn::build_network<double>(nn::NetworkKind::kCrnn, 50);
  Rng init(33004);
  net.init_params(init);
  nn::Tensor<double> x({60, 60, 3});
  for (double& v : x.values) v = rng.uniform(-1.0, 1.0);
  std::vector<double> target(50);
  double tsum = 0.0;
  for (double& v : target) {
    v = rng.uniform(0.0, 1.0);
    tsum += v;
  }
  for (double& v : target) v /= tsum;

  auto loss = [&]() {
    const auto logits = net.forward(x);
    return static_cast<double>(nn::softmax_cross_entropy(logits.values, target).loss);
  };

  net.zero_grad();
  const auto logits = net.forward(x);
  const auto ce = nn::softmax_cross_entropy(logits.values, target);
  const auto dl = nn::softmax_cross_entropy_grad(ce.probs, target);
  nn::Tensor<double> dlogits({50});
  for (int i = 0; i < 50; ++i) dlogits.at(i) = dl[i];
  net.backward(dlogits);

  auto fd_at = [&](nn::Param<double>* p, std::size_t j, double h) {
    const double saved = p->value.values[j];
    p->value.values[j] = saved + h;
    const double up = loss();
    p->value.values[j] = saved - h;
    const double down = loss();
    p->value.values[j] = saved;
    return (up - down) / (2.0 * h);
  };

  struct Offender {
    nn::Param<double>* param = nullptr;
    std::size_t index = 0;
    double analytic = 0.0;
    double rel = 0.0;
  };
  std::vector<Offender> worst_coords;

  const double h = 1e-5;
  int full_checked = 0;
  double full_worst = 0.0;
  for (nn::Param<double>* p : net.params()) {
    const int samples = 6;
    for (int s = 0; s < samples; ++s) {
      const std::size_t j = rng.uniform_int(p->value.size());
      const double analytic = p->value.grad[j];
      const double fd = fd_at(p, j, h);
      if (std::max(std::abs(analytic), std::abs(fd)) > 1e-8) {
        const double rel = testutil::rel_err(analytic, fd);
        full_worst = std::max(full_worst, rel);
        ++full_checked;
        worst_coords.push_back({p, j, analytic, rel});
        std::sort(worst_coords.begin(), worst_coords.end(),
                  [](const Offender& a, const Offender& b) { return a.rel > b.rel; });
        if (worst_coords.size() > 3) worst_coords.pop_back();
      }
    }
  }
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "gradient suite as stated: layers max rel err %.3g, full CRNN at h=1e-5 max rel "
                "err %.3g over %d coords (< 1e-5 required)",
                worst, full_worst, full_checked);
  report(3, worst < 1e-5 && full_worst < 1e-5 && full_checked > 200, buf);

  // Control: the h=1e-5 discrepancy is the difference quotient crossing
  // relu/maxpool kinks, not a gradient bug. For the worst offenders the
  // error collapses once the step drops below their kink distance.
  for (const Offender& o : worst_coords) {
    double best_rel = o.rel;
    for (const double h_fine : {1e-6, 1e-7}) {
      best_rel = std::min(best_rel, testutil::rel_err(o.analytic, fd_at(o.param, o.index, h_fine)));
    }
    // Loss-evaluation noise of ~1e-13 caps what a central difference can
    // resolve: gradients much below ~1e-6 are unverifiable at any step.
    const bool resolvable = std::abs(o.analytic) > 1e-6;
    std::snprintf(buf, sizeof buf,
                  "  control: %s[%zu] g=%+.4e, rel err %.2e at h=1e-5 -> %.2e at finer h%s",
                  o.param->name.c_str(), o.index, o.analytic, o.rel, best_rel,
                  resolvable ? "" : " (|g| below the double-precision FD floor)");
    report(3, !resolvable || best_rel < 1e-5, buf, /*hard=*/false);
  }
}

// --------------------------------------------------------------------------
// Criterion 4: mixup properties. Linearity exact to 1e-12, label sums 1,
// lambda empirical mean 0.5 +- 0.01 and variance 0.1786 +- 0.005 at alpha 0.2
// over 1e5 draws.
// --------------------------------------------------------------------------
void criterion_4() {
  Rng rng(44001);
  bool linear_ok = true, label_ok = true;
  for (int trial = 0; trial < 500; ++trial) {
    nn::Tensor<double> a({6, 5}), b({6, 5});
    for (double& v : a.values) v = rng.uniform(-3.0, 3.0);
    for (double& v : b.values) v = rng.uniform(-3.0, 3.0);
    std::vector<double> la(7, 0.0), lb(7, 0.0);
    la[static_cast<std::size_t>(rng.uniform_int(7))] = 1.0;
    lb[static_cast<std::size_t>(rng.uniform_int(7))] = 1.0;
    const double lambda = rng.uniform(0.0, 1.0);
    nn::Tensor<double> out;
    std::vector<double> label;
    augment::mixup_pair(a, la, b, lb, lambda, out, label);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double expected = lambda * a.values[i] + (1.0 - lambda) * b.values[i];
      if (std::abs(out.values[i] - expected) > 1e-12) linear_ok = false;
    }
    double sum = 0.0;
    for (const double v : label) sum += v;
    if (std::abs(sum - 1.0) > 1e-12) label_ok = false;
  }

  augment::MixupConfig cfg{0.2, true, 0};
  Rng draws(44002);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lambda = augment::sample_lambda(cfg, draws);
    sum += lambda;
    sq += lambda * lambda;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  const bool mean_ok = std::abs(mean - 0.5) < 0.01;
  const bool var_ok = std::abs(var - 0.17857142857142858) < 0.005;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "mixup: linearity %s, label sums %s, lambda mean %.4f (0.5 +- 0.01), "
                "variance %.4f (0.1786 +- 0.005)",
                linear_ok ? "exact" : "BROKEN", label_ok ? "ok" : "BROKEN", mean, var);
  report(4, linear_ok && label_ok && mean_ok && var_ok, buf);
}

// --------------------------------------------------------------------------
// Criterion 5: fusion properties. 1000 random fuse cases stay probability
// vectors; the perfect-vs-adversarial fixture returns w = [1, 0]; the
// four-branch grid at step 0.1 has exactly 286 points.
// --------------------------------------------------------------------------
void criterion_5() {
  Rng rng(55001);
  bool prob_ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const int branches = 1 + static_cast<int>(rng.uniform_int(6));
    const int classes = 2 + static_cast<int>(rng.uniform_int(49));
    std::vector<fusion::ScoreVector> scores(branches);
    for (auto& s : scores) {
      s.resize(classes);
      double sum = 0.0;
      for (double& v : s) {
        v = rng.uniform(0.0, 1.0);
        sum += v;
      }
      for (double& v : s) v /= sum;
    }
    fusion::FusionWeights w;
    w.weights.resize(branches);
    double wsum = 0.0;
    for (double& v : w.weights) {
      v = rng.uniform(0.0, 1.0);
      wsum += v;
    }
    for (double& v : w.weights) v /= wsum;
    const auto fused = fusion::fuse(scores, w);
    double sum = 0.0;
    for (const double v : fused) {
      if (v < 0.0) prob_ok = false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) prob_ok = false;
  }

  // Perfect branch with graded confidence vs a confidently wrong branch.
  std::vector<std::vector<fusion::ScoreVector>> clip_scores;
  std::vector<int> labels;
  int cls = 0;
  for (const double q : {0.55, 0.6, 0.7, 0.8, 0.9, 0.97}) {
    const int label = cls % 4;
    const int wrong = (label + 1) % 4;
    fusion::ScoreVector perfect(4, 0.0), adversarial(4, 0.0);
    perfect[label] = q;
    perfect[wrong] = 1.0 - q;
    adversarial[wrong] = 1.0;
    clip_scores.push_back({perfect, adversarial});
    labels.push_back(label);
    ++cls;
  }
  const auto search = fusion::grid_search_weights(clip_scores, labels, 0.1);
  const bool corner_ok = search.best_weights.weights.size() == 2 &&
                         search.best_weights.weights[0] == 1.0 &&
                         search.best_weights.weights[1] == 0.0;

  const std::size_t grid_points = fusion::enumerate_weight_grid(4, 0.1).size();

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "fusion: 1000 fuse cases %s, adversarial search -> [%.1f, %.1f], "
                "4-branch grid %zu points (286)",
                prob_ok ? "valid" : "BROKEN", search.best_weights.weights[0],
                search.best_weights.weights[1], grid_points);
  report(5, prob_ok && corner_ok && grid_points == 286, buf);
}

// --------------------------------------------------------------------------
// Criterion 6: N_ss = 1 segmented pipeline vs the baseline whole-band path,
// bit-identical on the toy dataset: the band cache against a direct
// no-scheme extraction, and fused prediction with w = [1] against the
// single-branch window mean.
// --------------------------------------------------------------------------
void criterion_6(const harness::ExperimentConfig& base) {
  harness::ExperimentConfig cfg = base;
  cfg.cut_points_hz = {0.0, 22050.0};
  cfg.epochs = 1;
  cfg.mixup_enabled = false;

  harness::cmd_extract(cfg);
  const auto segmented_path = harness::band_cache_path(cfg, 0);

  // Baseline: the same per-window computation written directly, no scheme.
  const auto manifest = audio::scan_dataset(cfg.dataset_root);
  const auto baseline_path = std::filesystem::path(cfg.out_dir) / "baseline_wholeband.slm";
  {
    dsp::FeatureCacheWriter writer(baseline_path);
    const dsp::MelFilterBank bank = dsp::build_mel_filterbank(cfg.spec, 0.0, 22050.0);
    const dsp::WindowPolicy policy = cfg.window_policy();
    for (const auto& ref : manifest.clips) {
      const audio::AudioClip clip = audio::load_clip(ref);
      const int n_windows =
          dsp::window_count(dsp::total_frames(clip.samples.size(), cfg.spec), policy);
      const std::size_t window_samples = 61 * 512;
      for (int w = 0; w < n_windows; ++w) {
        const std::size_t offset = static_cast<std::size_t>(w) * 30 * 512;
        dsp::EnergySpectrum spec;
        if (offset + window_samples <= clip.samples.size()) {
          spec = dsp::stft_energy(clip, cfg.spec, w, policy);
        } else {
          std::vector<double> padded(window_samples, 0.0);
          if (offset < clip.samples.size()) {
            std::copy(clip.samples.begin() + static_cast<std::ptrdiff_t>(offset),
                      clip.samples.end(), padded.begin());
          }
          spec = dsp::stft_energy_buffer(padded.data(), padded.size(), cfg.spec);
        }
        dsp::LogmelTensor t = dsp::delta_channels(dsp::logmel(spec, bank, cfg.spec));
        t.clip_id = clip.clip_id;
        t.window_index = w;
        t.band_index = 0;
        writer.add(t);
      }
    }
    writer.close();
  }
  const bool cache_identical = slurp(segmented_path) == slurp(baseline_path);

  // Fused prediction with w = [1] vs the plain single-branch clip mean.
  harness::cmd_train(cfg);
  const dsp::ChannelStats stats = dsp::load_channel_stats(harness::stats_path(cfg, 0));
  std::vector<model::BranchModel> models;
  models.emplace_back(nn::NetworkKind::kCrnn, manifest.n_classes, 0);
  models[0].load(harness::checkpoint_path(cfg, 0));

  bool predict_identical = true;
  auto cache = dsp::read_feature_cache(segmented_path);
  std::map<std::string, std::vector<dsp::LogmelTensor>> by_clip;
  for (auto& t : cache) by_clip[t.clip_id].push_back(t);
  int clips_checked = 0;
  for (auto& [clip_id, windows] : by_clip) {
    if (++clips_checked > 40) break;  // 40 clips are plenty for bit-identity
    for (auto& w : windows) dsp::apply_channel_stats(w, stats);
    std::vector<std::vector<dsp::LogmelTensor>> per_window;
    for (const auto& w : windows) per_window.push_back({w});
    const auto fused = model::predict_clip(models, per_window, fusion::FusionWeights{{1.0}});
    const auto single = model::predict_clip_single(models[0], windows);
    if (std::memcmp(fused.data(), single.data(), fused.size() * sizeof(double)) != 0) {
      predict_identical = false;
    }
  }

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "degenerate equivalence: cache bytes %s, fused-vs-single predictions %s",
                cache_identical ? "identical" : "DIFFER",
                predict_identical ? "bit-identical" : "DIFFER");
  report(6, cache_identical && predict_identical, buf);
}

// --------------------------------------------------------------------------
// Criterion 7: toy end-to-end. CRNN + mixup + two bands + fusion search
// reaches >= 90% test accuracy within 200 epochs in <= 30 minutes; fused
// validation accuracy >= best single-branch validation accuracy.
// --------------------------------------------------------------------------
void criterion_7(const harness::ExperimentConfig& base) {
  const auto t0 = Clock::now();
  harness::ExperimentConfig cfg = base;
  cfg.cut_points_hz = {0.0, 10000.0, 22050.0};
  cfg.epochs = 8;  // well within the 200-epoch budget
  cfg.mixup_enabled = true;
  cfg.network = "crnn";
  cfg.fusion_enabled = true;

  harness::cmd_extract(cfg);
  harness::cmd_train(cfg);
  const harness::ReportRow fused = harness::cmd_evaluate(cfg);
  const harness::ReportRow band0 = harness::cmd_evaluate(cfg, fusion::FusionWeights{{1.0, 0.0}});
  const harness::ReportRow band1 = harness::cmd_evaluate(cfg, fusion::FusionWeights{{0.0, 1.0}});
  const double elapsed = seconds_since(t0);

  const double best_single_val = std::max(band0.val_acc, band1.val_acc);
  const bool acc_ok = fused.accuracy >= 0.9;
  const bool val_ok = fused.val_acc >= best_single_val;
  const bool time_ok = elapsed <= 30.0 * 60.0;

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "toy end-to-end: test acc %.3f (>= 0.9), fused val %.3f >= best single val %.3f, "
                "%d epochs, %.0f s (<= 1800); test-fold singles %.3f/%.3f for information",
                fused.accuracy, fused.val_acc, best_single_val, cfg.epochs, elapsed,
                band0.accuracy, band1.accuracy);
  report(7, acc_ok && val_ok && time_ok, buf);
}

// --------------------------------------------------------------------------
// Criterion 8 (report-only): ablation order on the toy dataset, 3 seeds,
// mean test accuracy for CNN / CNN+mixup / CRNN / CRNN+mixup at N_ss = 1.
// --------------------------------------------------------------------------
void criterion_8(const harness::ExperimentConfig& base) {
  struct Cell {
    const char* network;
    bool mixup;
    double sum = 0.0;
  };
  Cell cells[4] = {{"cnn", false}, {"cnn", true}, {"crnn", false}, {"crnn", true}};
  const std::uint64_t seeds[3] = {11, 22, 33};

  for (Cell& cell : cells) {
    for (const std::uint64_t seed : seeds) {
      harness::ExperimentConfig cfg = base;
      cfg.cut_points_hz = {0.0, 22050.0};
      cfg.network = cell.network;
      cfg.mixup_enabled = cell.mixup;
      cfg.epochs = 3;
      cfg.seed = seed;
      harness::cmd_extract(cfg);
      harness::cmd_train(cfg);
      cell.sum += harness::cmd_evaluate(cfg).accuracy;
    }
  }
  const double cnn = cells[0].sum / 3.0, cnn_mix = cells[1].sum / 3.0,
               crnn = cells[2].sum / 3.0, crnn_mix = cells[3].sum / 3.0;
  const bool ordered = cnn <= std::max(cnn_mix, crnn) + 0.05 &&
                       std::max(cnn_mix, crnn) <= crnn_mix + 0.05;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "ablation order (3-seed means, report only): CNN %.3f, CNN+mixup %.3f, "
                "CRNN %.3f, CRNN+mixup %.3f; monotone-within-noise: %s",
                cnn, cnn_mix, crnn, crnn_mix, ordered ? "yes" : "no");
  report(8, true, buf, /*hard=*/false);
}

// --------------------------------------------------------------------------
// Criterion 9: byte-identical re-runs of train and evaluate under the same
// config and seed.
// --------------------------------------------------------------------------
void criterion_9(const harness::ExperimentConfig& base) {
  harness::ExperimentConfig cfg = base;
  cfg.cut_points_hz = {0.0, 10000.0, 22050.0};
  cfg.epochs = 2;
  cfg.seed = 777;

  harness::cmd_extract(cfg);
  harness::cmd_train(cfg);
  const std::string ckpt0 = slurp(harness::checkpoint_path(cfg, 0));
  const std::string ckpt1 = slurp(harness::checkpoint_path(cfg, 1));
  const std::string log0 = slurp(harness::models_dir(cfg) / "train_band0.csv");
  harness::cmd_evaluate(cfg);
  const std::string report_csv = slurp(harness::reports_dir(cfg) / "evaluate.csv");

  harness::cmd_train(cfg);
  harness::cmd_evaluate(cfg);
  const bool ok = slurp(harness::checkpoint_path(cfg, 0)) == ckpt0 &&
                  slurp(harness::checkpoint_path(cfg, 1)) == ckpt1 &&
                  slurp(harness::models_dir(cfg) / "train_band0.csv") == log0 &&
                  slurp(harness::reports_dir(cfg) / "evaluate.csv") == report_csv;
  report(9, ok,
         ok ? "determinism: re-run reproduced checkpoints, logs and reports byte-identically"
            : "determinism: re-run produced different bytes");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  std::filesystem::remove_all(work_dir());
  std::filesystem::create_directories(work_dir());

  harness::ExperimentConfig base;
  base.dataset_root = (work_dir() / "toy_data").string();
  base.out_dir = (work_dir() / "out").string();
  base.batch_size = 16;
  base.learning_rate = 0.02;
  base.test_fold = 5;
  base.val_fold = 4;
  base.seed = 1;
  harness::generate_toy_dataset(base.dataset_root, base.seed);

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6(base);
  criterion_7(base);
  criterion_8(base);
  criterion_9(base);

  std::printf("acceptance suite finished in %.0f s: %s\n", seconds_since(t0),
              g_failures == 0 ? "ALL HARD CRITERIA PASSED"
                              : (std::to_string(g_failures) + " criteria failed").c_str());
  return g_failures == 0 ? 0 : 1;
}
