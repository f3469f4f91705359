#pragma once

#include <cstdint>
#include <vector>

#include "ssc/rng.hpp"
#include "ssc/tensor.hpp"

namespace ssc::augment {

struct MixupConfig {
  double alpha = 0.2;  // Beta shape; must be > 0
  bool enabled = true;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(alpha > 0.0)) throw ConfigError("mixup: alpha must be positive");
  }
};

/// Draw lambda ~ Beta(alpha, alpha) via two independent Gamma(alpha, 1) draws:
/// lambda = g1 / (g1 + g2).
double sample_lambda(const MixupConfig& cfg, Rng& rng);

/// Mix one pair: feature = lambda*a + (1-lambda)*b elementwise, label mixed
/// with the same proportion. Shapes must match.
template <typename T>
void mixup_pair(const nn::Tensor<T>& feature_a, const std::vector<T>& label_a,
                const nn::Tensor<T>& feature_b, const std::vector<T>& label_b, double lambda,
                nn::Tensor<T>& feature_out, std::vector<T>& label_out) {
  if (!feature_a.same_shape(feature_b)) throw ShapeError("mixup: feature shapes differ");
  if (label_a.size() != label_b.size()) throw ShapeError("mixup: label lengths differ");
  const T lam = static_cast<T>(lambda);
  const T inv = static_cast<T>(1.0 - lambda);
  feature_out = feature_a;
  for (std::size_t i = 0; i < feature_out.size(); ++i) {
    feature_out.values[i] = lam * feature_a.values[i] + inv * feature_b.values[i];
  }
  label_out.resize(label_a.size());
  for (std::size_t i = 0; i < label_a.size(); ++i) {
    label_out[i] = lam * label_a[i] + inv * label_b[i];
  }
}

/// Batch policy: shuffle the batch order, then mix the element at shuffled
/// position i with the element at shuffled position i+1 (wrapping), one
/// lambda per pair. Returns a batch of the same size.
template <typename T>
void mixup_batch(const std::vector<nn::Tensor<T>>& features,
                 const std::vector<std::vector<T>>& labels, const MixupConfig& cfg, Rng& rng,
                 std::vector<nn::Tensor<T>>& features_out,
                 std::vector<std::vector<T>>& labels_out) {
  cfg.validate();
  if (features.size() != labels.size()) throw ShapeError("mixup: batch sizes differ");
  const std::size_t n = features.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  features_out.resize(n);
  labels_out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = order[i];
    const std::size_t b = order[(i + 1) % n];
    const double lambda = sample_lambda(cfg, rng);
    mixup_pair(features[a], labels[a], features[b], labels[b], lambda, features_out[i],
               labels_out[i]);
  }
}

}  // namespace ssc::augment
