#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include "ssc/checkpoint.hpp"
#include "ssc/crnn.hpp"
#include "ssc/dsp.hpp"
#include "ssc/fusion.hpp"

namespace ssc::model {

/// Normalized feature -> network input tensor: (mel, time, channel), so the
/// width the conv stack hands to the recurrent layers is the time axis.
nn::Tensor<float> feature_to_input(const dsp::LogmelTensor& feature);

/// One classifier instance bound to a sub-band branch.
class BranchModel {
 public:
  BranchModel(nn::NetworkKind kind, int n_classes, int band_index)
      : band_index_(band_index), net_(nn::build_network<float>(kind, n_classes)) {}

  int band_index() const { return band_index_; }
  int n_classes() const { return net_.n_classes(); }
  nn::Network<float>& net() { return net_; }

  void init_params(Rng& rng) { net_.init_params(rng); }

  /// Class distribution for one normalized (n_frames, n_mels, 3) feature.
  fusion::ScoreVector predict(const dsp::LogmelTensor& feature);

  void save(const std::filesystem::path& path, const nn::SgdNesterov<float>* opt = nullptr) {
    nn::save_checkpoint(path, net_, opt);
  }
  void load(const std::filesystem::path& path, nn::SgdNesterov<float>* opt = nullptr) {
    nn::load_checkpoint(path, net_, opt);
  }

 private:
  int band_index_;
  nn::Network<float> net_;
};

/// Eq.-4 style clip prediction: per window, fuse the per-branch scores with
/// the given weights; the clip score is the arithmetic mean of the window
/// scores. `windows[w][b]` is the normalized feature of window w, band b.
fusion::ScoreVector predict_clip(std::vector<BranchModel>& models,
                                 const std::vector<std::vector<dsp::LogmelTensor>>& windows,
                                 const fusion::FusionWeights& weights);

/// Branch-only clip score (mean of window distributions from one model).
fusion::ScoreVector predict_clip_single(BranchModel& model,
                                        const std::vector<dsp::LogmelTensor>& windows);

}  // namespace ssc::model
