#include "ssc/train.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ssc/loss.hpp"

namespace ssc::model {

namespace {

std::vector<std::vector<float>> snapshot_params(nn::Network<float>& net) {
  std::vector<std::vector<float>> snap;
  for (const nn::Param<float>* p : net.params()) {
    snap.emplace_back(p->value.values.begin(), p->value.values.end());
  }
  return snap;
}

void restore_params(nn::Network<float>& net, const std::vector<std::vector<float>>& snap) {
  const auto params = net.params();
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i]->value.values.assign(snap[i].begin(), snap[i].end());
  }
}

int argmax(const std::vector<float>& v) {
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = static_cast<int>(i);
  }
  return best;
}

double clip_accuracy(BranchModel& model, const std::vector<ClipWindows>& clips) {
  std::size_t correct = 0;
  for (const auto& clip : clips) {
    const fusion::ScoreVector score = predict_clip_single(model, clip.windows);
    int best = 0;
    for (std::size_t c = 1; c < score.size(); ++c) {
      if (score[c] > score[best]) best = static_cast<int>(c);
    }
    if (best == clip.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(clips.size());
}

}  // namespace

TrainResult train_branch(BranchModel& model, const std::vector<dsp::LogmelTensor>& train_features,
                         const std::vector<int>& train_labels,
                         const std::vector<ClipWindows>& val_clips, const TrainOptions& options) {
  if (train_features.empty()) throw DataError("train: empty training set");
  if (train_features.size() != train_labels.size()) {
    throw ShapeError("train: feature/label counts differ");
  }
  if (options.batch_size < 1) throw ConfigError("train: batch_size must be >= 1");

  const int n_classes = model.n_classes();
  const std::size_t n = train_features.size();

  std::vector<nn::Tensor<float>> inputs;
  inputs.reserve(n);
  for (const auto& f : train_features) inputs.push_back(feature_to_input(f));
  std::vector<std::vector<float>> one_hot(n, std::vector<float>(n_classes, 0.0f));
  for (std::size_t i = 0; i < n; ++i) {
    if (train_labels[i] < 0 || train_labels[i] >= n_classes) {
      throw ConfigError("train: label " + std::to_string(train_labels[i]) + " out of range");
    }
    one_hot[i][train_labels[i]] = 1.0f;
  }

  nn::Network<float>& net = model.net();
  const auto params = net.params();
  nn::SgdNesterov<float> optimizer(options.lr, options.momentum);
  optimizer.attach(params);

  Rng rng_shuffle(derive_seed(options.seed, "train.shuffle"));
  Rng rng_mixup(derive_seed(options.seed, "train.mixup"));

  TrainResult result;
  auto last_good = snapshot_params(net);
  std::vector<std::vector<float>> best;
  result.best_epoch = 0;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    optimizer.set_epoch(epoch);
    rng_shuffle.shuffle(order);

    double loss_sum = 0.0;
    std::size_t correct = 0;
    std::vector<nn::Tensor<float>> batch_x, mixed_x;
    std::vector<std::vector<float>> batch_y, mixed_y;

    for (std::size_t start = 0; start < n; start += options.batch_size) {
      const std::size_t end = std::min(n, start + options.batch_size);
      const std::size_t batch = end - start;
      batch_x.clear();
      batch_y.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch_x.push_back(inputs[order[i]]);
        batch_y.push_back(one_hot[order[i]]);
      }
      const std::vector<nn::Tensor<float>>* bx = &batch_x;
      const std::vector<std::vector<float>>* by = &batch_y;
      if (options.mixup.enabled) {
        augment::mixup_batch(batch_x, batch_y, options.mixup, rng_mixup, mixed_x, mixed_y);
        bx = &mixed_x;
        by = &mixed_y;
      }

      net.zero_grad();
      const float inv_batch = 1.0f / static_cast<float>(batch);
      for (std::size_t i = 0; i < batch; ++i) {
        const nn::Tensor<float> logits = net.forward((*bx)[i]);
        const auto ce = nn::softmax_cross_entropy(logits.values, (*by)[i]);
        if (!std::isfinite(static_cast<double>(ce.loss))) {
          restore_params(net, last_good);
          throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch + 1));
        }
        loss_sum += ce.loss;
        if (argmax(ce.probs) == argmax((*by)[i])) ++correct;
        std::vector<float> dlogits = nn::softmax_cross_entropy_grad(ce.probs, (*by)[i]);
        nn::Tensor<float> grad_tensor({n_classes});
        for (int c = 0; c < n_classes; ++c) grad_tensor.at(c) = dlogits[c] * inv_batch;
        net.backward(grad_tensor);
      }
      try {
        optimizer.step(params);
      } catch (const NumericError&) {
        restore_params(net, last_good);
        throw;
      }
    }

    EpochRecord record;
    record.epoch = epoch + 1;
    record.lr = optimizer.learning_rate();
    record.train_loss = loss_sum / static_cast<double>(n);
    record.train_acc = static_cast<double>(correct) / static_cast<double>(n);
    if (!val_clips.empty()) {
      record.val_acc = clip_accuracy(model, val_clips);
      if (best.empty() || record.val_acc > result.best_val_acc) {
        result.best_val_acc = record.val_acc;
        result.best_epoch = record.epoch;
        best = snapshot_params(net);
      }
    } else {
      result.best_epoch = record.epoch;
    }
    result.log.push_back(record);
    last_good = snapshot_params(net);
  }

  // Keep the best-validation parameters when a validation set was given.
  if (!best.empty()) restore_params(net, best);
  return result;
}

void write_train_log(const std::filesystem::path& path, const TrainResult& result) {
  std::ofstream out(path);
  if (!out) throw DataError("train: cannot write log " + path.string());
  out << "epoch,lr,train_loss,train_acc,val_acc\n";
  char buf[256];
  for (const auto& r : result.log) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", r.epoch, r.lr, r.train_loss,
                  r.train_acc, r.val_acc);
    out << buf;
  }
}

}  // namespace ssc::model
