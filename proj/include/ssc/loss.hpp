#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ssc/tensor.hpp"

namespace ssc::nn {

inline constexpr double kCrossEntropyEpsilon = 1e-12;

/// Numerically stable softmax (max subtraction).
template <typename T>
std::vector<T> softmax(std::span<const T> logits) {
  const T max = *std::max_element(logits.begin(), logits.end());
  std::vector<T> p(logits.size());
  T sum = T(0);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - max);
    sum += p[i];
  }
  for (T& v : p) v /= sum;
  return p;
}

template <typename T>
struct SoftmaxCeResult {
  std::vector<T> probs;
  T loss = T(0);
};

/// Soft-label cross entropy on top of softmax:
///   loss = -sum_i target_i * log(prob_i + eps).
/// Targets must be a probability vector (mixup produces soft labels).
template <typename T>
SoftmaxCeResult<T> softmax_cross_entropy(std::span<const T> logits, std::span<const T> target) {
  if (logits.size() != target.size()) {
    throw ShapeError("softmax_ce: logits and target lengths differ");
  }
  double sum = 0.0;
  for (const T t : target) {
    if (t < T(0)) throw ConfigError("softmax_ce: negative target entry");
    sum += static_cast<double>(t);
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ConfigError("softmax_ce: target does not sum to 1");
  }

  SoftmaxCeResult<T> out;
  out.probs = softmax(logits);
  double loss = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    loss -= static_cast<double>(target[i]) *
            std::log(static_cast<double>(out.probs[i]) + kCrossEntropyEpsilon);
  }
  out.loss = static_cast<T>(loss);
  return out;
}

/// Analytic gradient of softmax_cross_entropy w.r.t. the logits (exact for the
/// epsilon-stabilized loss; reduces to prob - target as eps -> 0).
template <typename T>
std::vector<T> softmax_cross_entropy_grad(std::span<const T> probs, std::span<const T> target) {
  const double eps = kCrossEntropyEpsilon;
  double s = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    s += static_cast<double>(target[i]) * static_cast<double>(probs[i]) /
         (static_cast<double>(probs[i]) + eps);
  }
  std::vector<T> grad(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    grad[i] = static_cast<T>(p * s - static_cast<double>(target[i]) * p / (p + eps));
  }
  return grad;
}

// Vector conveniences (any allocator).
template <typename T, typename A>
std::vector<T> softmax(const std::vector<T, A>& logits) {
  return softmax(std::span<const T>(logits.data(), logits.size()));
}

template <typename T, typename A1, typename A2>
SoftmaxCeResult<T> softmax_cross_entropy(const std::vector<T, A1>& logits,
                                         const std::vector<T, A2>& target) {
  return softmax_cross_entropy(std::span<const T>(logits.data(), logits.size()),
                               std::span<const T>(target.data(), target.size()));
}

template <typename T, typename A1, typename A2>
std::vector<T> softmax_cross_entropy_grad(const std::vector<T, A1>& probs,
                                          const std::vector<T, A2>& target) {
  return softmax_cross_entropy_grad(std::span<const T>(probs.data(), probs.size()),
                                    std::span<const T>(target.data(), target.size()));
}

}  // namespace ssc::nn
