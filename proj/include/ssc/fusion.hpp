#pragma once

#include <filesystem>
#include <vector>

#include "ssc/error.hpp"

namespace ssc::fusion {

/// Per-class probability distribution.
using ScoreVector = std::vector<double>;

/// Convex weight vector over sub-band branches (sums to 1 within 1e-9).
struct FusionWeights {
  std::vector<double> weights;

  int n_branches() const { return static_cast<int>(weights.size()); }
  void validate() const;
};

/// Weighted score fusion: sum_i w_i * scores_i.
ScoreVector fuse(const std::vector<ScoreVector>& branch_scores, const FusionWeights& w);

/// Top-1 accuracy; argmax ties resolve to the lowest class index.
/// Throws DataError on empty input.
double accuracy(const std::vector<ScoreVector>& predictions, const std::vector<int>& labels);

/// All compositions of 1 into n_branches parts at the given step, ascending
/// lexicographic order. step must divide 1 exactly.
std::vector<std::vector<double>> enumerate_weight_grid(int n_branches, double step);

struct GridPoint {
  FusionWeights weights;
  double accuracy = 0.0;
};

struct FusionSearchResult {
  FusionWeights best_weights;
  double best_accuracy = 0.0;
  std::vector<GridPoint> grid;
};

/// Exhaustive weight search over the simplex grid. `clip_scores[clip][branch]`
/// holds precomputed clip-level branch scores; no retraining happens here.
/// Ties keep the lexicographically smallest weight vector.
FusionSearchResult grid_search_weights(const std::vector<std::vector<ScoreVector>>& clip_scores,
                                       const std::vector<int>& labels, double step);

/// Export the full accuracy surface as CSV (w_1..w_n, accuracy).
void write_surface_csv(const std::filesystem::path& path, const FusionSearchResult& result);

}  // namespace ssc::fusion
