#pragma once

#include <cmath>
#include <vector>

#include "ssc/tensor.hpp"

namespace ssc::nn {

/// Step-decay learning rate: initial / decay_factor^floor(epoch / period).
struct LrSchedule {
  double initial = 0.1;
  double decay_factor = 10.0;
  int period_epochs = 100;

  double at_epoch(int epoch) const {
    return initial / std::pow(decay_factor, epoch / period_epochs);
  }
};

/// SGD with Nesterov momentum in the reformulated update:
///   v <- mu * v - lr * g
///   theta <- theta + mu * v - lr * g
/// With mu = 0 this is plain SGD.
template <typename T>
class SgdNesterov {
 public:
  SgdNesterov(LrSchedule schedule, T momentum) : schedule_(schedule), momentum_(momentum) {
    if (momentum < T(0) || momentum >= T(1)) {
      throw ConfigError("optimizer: momentum must be in [0, 1)");
    }
  }

  void attach(const std::vector<Param<T>*>& params) {
    velocity_.clear();
    velocity_.reserve(params.size());
    for (const Param<T>* p : params) {
      velocity_.emplace_back(p->value.shape);
    }
  }

  int epoch() const { return epoch_; }
  void set_epoch(int epoch) { epoch_ = epoch; }
  double learning_rate() const { return schedule_.at_epoch(epoch_); }
  const LrSchedule& schedule() const { return schedule_; }
  T momentum() const { return momentum_; }

  std::vector<Tensor<T>>& velocities() { return velocity_; }
  const std::vector<Tensor<T>>& velocities() const { return velocity_; }

  /// One update over all parameters from their accumulated gradients.
  /// Throws NumericError on any non-finite gradient.
  void step(const std::vector<Param<T>*>& params) {
    if (velocity_.size() != params.size()) {
      throw ShapeError("optimizer: step before attach");
    }
    const T lr = static_cast<T>(learning_rate());
    for (std::size_t i = 0; i < params.size(); ++i) {
      Param<T>& p = *params[i];
      Tensor<T>& v = velocity_[i];
      if (!p.value.same_shape(v)) {
        throw ShapeError("optimizer: velocity shape mismatch for " + p.name);
      }
      for (std::size_t j = 0; j < p.value.size(); ++j) {
        const T g = p.value.grad[j];
        if (!std::isfinite(static_cast<double>(g))) {
          throw NumericError("optimizer: non-finite gradient in " + p.name);
        }
        const T vel = momentum_ * v.values[j] - lr * g;
        v.values[j] = vel;
        p.value.values[j] += momentum_ * vel - lr * g;
      }
    }
  }

 private:
  LrSchedule schedule_;
  T momentum_;
  int epoch_ = 0;
  std::vector<Tensor<T>> velocity_;
};

}  // namespace ssc::nn
