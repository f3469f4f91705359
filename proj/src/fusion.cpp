#include "ssc/fusion.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace ssc::fusion {

void FusionWeights::validate() const {
  if (weights.empty()) throw ShapeError("fusion: empty weight vector");
  double sum = 0.0;
  for (const double w : weights) {
    if (w < 0.0) throw ConfigError("fusion: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("fusion: weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

ScoreVector fuse(const std::vector<ScoreVector>& branch_scores, const FusionWeights& w) {
  w.validate();
  if (static_cast<int>(branch_scores.size()) != w.n_branches()) {
    throw ShapeError("fusion: " + std::to_string(branch_scores.size()) + " score vectors vs " +
                     std::to_string(w.n_branches()) + " weights");
  }
  const std::size_t n_classes = branch_scores.front().size();
  ScoreVector out(n_classes, 0.0);
  for (std::size_t i = 0; i < branch_scores.size(); ++i) {
    if (branch_scores[i].size() != n_classes) {
      throw ShapeError("fusion: branch score lengths differ");
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
      out[c] += w.weights[i] * branch_scores[i][c];
    }
  }
  return out;
}

namespace {
int argmax_lowest(const ScoreVector& scores) {
  int best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = static_cast<int>(i);
  }
  return best;
}
}  // namespace

double accuracy(const std::vector<ScoreVector>& predictions, const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) {
    throw ShapeError("accuracy: prediction/label lengths differ");
  }
  if (predictions.empty()) throw DataError("accuracy: empty input");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (argmax_lowest(predictions[i]) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

std::vector<std::vector<double>> enumerate_weight_grid(int n_branches, double step) {
  if (n_branches < 1) throw ConfigError("fusion: need at least one branch");
  if (!(step > 0.0) || step > 1.0) throw ConfigError("fusion: step must be in (0, 1]");
  const int n_steps = static_cast<int>(std::llround(1.0 / step));
  if (std::abs(n_steps * step - 1.0) > 1e-9) {
    throw ConfigError("fusion: step must divide 1 exactly");
  }

  std::vector<std::vector<double>> grid;
  std::vector<int> counts(static_cast<std::size_t>(n_branches), 0);
  // Ascending lexicographic enumeration of integer compositions of n_steps.
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n_branches - 1) {
      counts[static_cast<std::size_t>(pos)] = remaining;
      std::vector<double> w(counts.size());
      for (std::size_t i = 0; i < counts.size(); ++i) w[i] = counts[i] * step;
      grid.push_back(std::move(w));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[static_cast<std::size_t>(pos)] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  recurse(recurse, 0, n_steps);
  return grid;
}

FusionSearchResult grid_search_weights(const std::vector<std::vector<ScoreVector>>& clip_scores,
                                       const std::vector<int>& labels, double step) {
  if (clip_scores.empty()) throw DataError("fusion search: empty validation set");
  if (clip_scores.size() != labels.size()) {
    throw ShapeError("fusion search: clip/label counts differ");
  }
  const int n_branches = static_cast<int>(clip_scores.front().size());
  for (const auto& per_branch : clip_scores) {
    if (static_cast<int>(per_branch.size()) != n_branches) {
      throw ShapeError("fusion search: inconsistent branch counts across clips");
    }
  }

  FusionSearchResult result;
  for (const auto& weights : enumerate_weight_grid(n_branches, step)) {
    GridPoint point;
    point.weights.weights = weights;
    std::vector<ScoreVector> fused;
    fused.reserve(clip_scores.size());
    for (const auto& per_branch : clip_scores) {
      fused.push_back(fuse(per_branch, point.weights));
    }
    point.accuracy = accuracy(fused, labels);
    if (result.grid.empty() || point.accuracy > result.best_accuracy) {
      result.best_accuracy = point.accuracy;
      result.best_weights = point.weights;
    }
    result.grid.push_back(std::move(point));
  }
  return result;
}

void write_surface_csv(const std::filesystem::path& path, const FusionSearchResult& result) {
  std::ofstream out(path);
  if (!out) throw DataError("fusion: cannot write " + path.string());
  const int n = result.grid.empty() ? 0 : result.grid.front().weights.n_branches();
  for (int i = 1; i <= n; ++i) out << "w_" << i << ',';
  out << "accuracy\n";
  char buf[64];
  for (const auto& point : result.grid) {
    for (const double w : point.weights.weights) {
      std::snprintf(buf, sizeof buf, "%.17g", w);
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", point.accuracy);
    out << buf << '\n';
  }
}

}  // namespace ssc::fusion
