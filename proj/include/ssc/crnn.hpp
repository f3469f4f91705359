#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ssc/layers.hpp"
#include "ssc/loss.hpp"

namespace ssc::nn {

enum class NetworkKind {
  kCrnn,     // conv stack + bidirectional GRUs
  kCnnOnly,  // GRUs replaced by a temporal mean over the last pooled map
};

/// The stack is laid out for 60x60x3 inputs (the pooled map's height fixes
/// the recurrent feature width).
inline constexpr int kInputFrames = 60;
inline constexpr int kInputMels = 60;

inline const char* to_string(NetworkKind kind) {
  return kind == NetworkKind::kCrnn ? "crnn" : "cnn";
}

/// A sequential layer stack with named parameters.
template <typename T>
class Network {
 public:
  Network(NetworkKind kind, int n_classes, std::vector<std::unique_ptr<Layer<T>>> layers)
      : kind_(kind), n_classes_(n_classes), layers_(std::move(layers)) {}

  NetworkKind network_kind() const { return kind_; }
  int n_classes() const { return n_classes_; }
  const std::vector<std::unique_ptr<Layer<T>>>& layers() const { return layers_; }

  std::vector<Param<T>*> params() {
    std::vector<Param<T>*> out;
    for (auto& layer : layers_) {
      for (Param<T>* p : layer->params()) out.push_back(p);
    }
    return out;
  }

  std::size_t parameter_count() {
    std::size_t n = 0;
    for (Param<T>* p : params()) n += p->value.size();
    return n;
  }

  /// Glorot-uniform weights, zero biases; one stream in layer order.
  void init_params(Rng& rng) {
    for (auto& layer : layers_) {
      if (auto* conv = dynamic_cast<Conv2d<T>*>(layer.get())) {
        conv->init(rng);
      } else if (auto* gru = dynamic_cast<BiGru<T>*>(layer.get())) {
        gru->init(rng);
      } else if (auto* dense = dynamic_cast<Dense<T>*>(layer.get())) {
        dense->init(rng);
      }
    }
  }

  void zero_grad() {
    for (Param<T>* p : params()) p->value.zero_grad();
  }

  /// Forward pass to logits, recording intermediates for backward.
  Tensor<T> forward(const Tensor<T>& x) {
    Tensor<T> h = x;
    for (auto& layer : layers_) h = layer->forward(h);
    forward_done_ = true;
    return h;
  }

  /// Reverse-mode pass from the logit gradient; accumulates parameter grads.
  void backward(const Tensor<T>& dlogits) {
    if (!forward_done_) throw Error("network: backward before forward");
    Tensor<T> g = dlogits;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
      g = (*it)->backward(g);
    }
  }

  /// Softmax class distribution for one input.
  std::vector<T> predict(const Tensor<T>& x) {
    const Tensor<T> logits = forward(x);
    return softmax(logits.values);
  }

  /// Per-layer output shapes of one forward pass (for conformance checks).
  std::vector<std::pair<std::string, std::vector<int>>> layer_output_shapes(const Tensor<T>& x) {
    std::vector<std::pair<std::string, std::vector<int>>> shapes;
    Tensor<T> h = x;
    for (auto& layer : layers_) {
      h = layer->forward(h);
      shapes.emplace_back(layer->name(), h.shape);
    }
    forward_done_ = true;
    return shapes;
  }

 private:
  NetworkKind kind_;
  int n_classes_;
  std::vector<std::unique_ptr<Layer<T>>> layers_;
  bool forward_done_ = false;
};

/// The classifier stack:
///   Conv1..2 (32 @ 3x3) Pool(4,2) Conv3..4 (64 @ 3x1) Pool(2,1)
///   Conv5..6 (128 @ 1x3) Pool(1,2) Conv7..8 (256 @ 3x3) Pool(2,2)
///   -> sequence over the time axis -> BiGRU 2x128, BiGRU 2x128 -> mean -> FC.
/// The CNN-only variant replaces the GRUs with the temporal mean directly.
/// ReLU follows every conv; pooling is non-overlapping ceil-mode max.
template <typename T>
Network<T> build_network(NetworkKind kind, int n_classes) {
  if (n_classes < 2) throw ConfigError("network: need at least 2 classes");
  std::vector<std::unique_ptr<Layer<T>>> layers;
  auto conv = [&](const char* name, int kh, int kw, int c_in, int c_out) {
    layers.push_back(std::make_unique<Conv2d<T>>(name, kh, kw, c_in, c_out));
    layers.push_back(std::make_unique<Relu<T>>(std::string(name) + ".relu"));
  };
  conv("conv1", 3, 3, 3, 32);
  conv("conv2", 3, 3, 32, 32);
  layers.push_back(std::make_unique<MaxPool2d<T>>("pool1", 4, 2));
  conv("conv3", 3, 1, 32, 64);
  conv("conv4", 3, 1, 64, 64);
  layers.push_back(std::make_unique<MaxPool2d<T>>("pool2", 2, 1));
  conv("conv5", 1, 3, 64, 128);
  conv("conv6", 1, 3, 128, 128);
  layers.push_back(std::make_unique<MaxPool2d<T>>("pool3", 1, 2));
  conv("conv7", 3, 3, 128, 256);
  conv("conv8", 3, 3, 256, 256);
  layers.push_back(std::make_unique<MaxPool2d<T>>("pool4", 2, 2));
  layers.push_back(std::make_unique<MapToSequence<T>>("to_sequence"));
  int fc_in;
  if (kind == NetworkKind::kCrnn) {
    // After Pool4 the map is (4, 8, 256): 8 steps of 1024 features.
    layers.push_back(std::make_unique<BiGru<T>>("gru1", 4 * 256, 128));
    layers.push_back(std::make_unique<BiGru<T>>("gru2", 256, 128));
    fc_in = 256;
  } else {
    fc_in = 4 * 256;
  }
  layers.push_back(std::make_unique<TemporalMean<T>>("mean_over_time"));
  layers.push_back(std::make_unique<Dense<T>>("fc1", fc_in, n_classes));
  return Network<T>(kind, n_classes, std::move(layers));
}

}  // namespace ssc::nn
