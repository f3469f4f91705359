#include "ssc/model.hpp"

namespace ssc::model {

nn::Tensor<float> feature_to_input(const dsp::LogmelTensor& feature) {
  nn::Tensor<float> x({feature.n_mels, feature.n_frames, 3});
  for (int n = 0; n < feature.n_frames; ++n) {
    for (int k = 0; k < feature.n_mels; ++k) {
      for (int c = 0; c < 3; ++c) {
        x.at(k, n, c) = feature.at(n, k, c);
      }
    }
  }
  return x;
}

fusion::ScoreVector BranchModel::predict(const dsp::LogmelTensor& feature) {
  if (feature.n_frames != nn::kInputFrames || feature.n_mels != nn::kInputMels) {
    throw ShapeError("predict: expected a (" + std::to_string(nn::kInputFrames) + "," +
                     std::to_string(nn::kInputMels) + ",3) feature, got (" +
                     std::to_string(feature.n_frames) + "," + std::to_string(feature.n_mels) +
                     ",3)");
  }
  const std::vector<float> probs = net_.predict(feature_to_input(feature));
  fusion::ScoreVector out(probs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    out[i] = probs[i];
    sum += out[i];
  }
  // Renormalize in double so downstream fusion sees exact distributions.
  for (double& v : out) v /= sum;
  return out;
}

fusion::ScoreVector predict_clip_single(BranchModel& model,
                                        const std::vector<dsp::LogmelTensor>& windows) {
  if (windows.empty()) throw ShapeError("predict: clip has no windows");
  fusion::ScoreVector acc(static_cast<std::size_t>(model.n_classes()), 0.0);
  for (const auto& w : windows) {
    const fusion::ScoreVector p = model.predict(w);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += p[c];
  }
  for (double& v : acc) v /= static_cast<double>(windows.size());
  return acc;
}

fusion::ScoreVector predict_clip(std::vector<BranchModel>& models,
                                 const std::vector<std::vector<dsp::LogmelTensor>>& windows,
                                 const fusion::FusionWeights& weights) {
  if (static_cast<int>(models.size()) != weights.n_branches()) {
    throw ConfigError("predict: " + std::to_string(models.size()) + " branch models vs " +
                      std::to_string(weights.n_branches()) + " fusion weights");
  }
  if (windows.empty()) throw ShapeError("predict: clip has no windows");

  fusion::ScoreVector acc(static_cast<std::size_t>(models.front().n_classes()), 0.0);
  for (const auto& per_band : windows) {
    if (per_band.size() != models.size()) {
      throw ConfigError("predict: window has " + std::to_string(per_band.size()) +
                        " band features, expected " + std::to_string(models.size()));
    }
    std::vector<fusion::ScoreVector> branch_scores;
    branch_scores.reserve(models.size());
    for (std::size_t b = 0; b < models.size(); ++b) {
      branch_scores.push_back(models[b].predict(per_band[b]));
    }
    const fusion::ScoreVector fused = fusion::fuse(branch_scores, weights);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += fused[c];
  }
  for (double& v : acc) v /= static_cast<double>(windows.size());
  return acc;
}

}  // namespace ssc::model
