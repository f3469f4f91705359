#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "ssc/rng.hpp"
#include "ssc/tensor.hpp"

namespace ssc::nn {

template <typename T>
using EigenRowMajor = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatMap = Eigen::Map<EigenRowMajor<T>>;
template <typename T>
using ConstMatMap = Eigen::Map<const EigenRowMajor<T>>;
template <typename T>
using VecMap = Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>;
template <typename T>
using ConstVecMap = Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>;

/// Stateful layer: forward caches whatever backward needs; backward returns
/// the gradient w.r.t. the input and accumulates parameter gradients.
/// One layer instance serves one sample at a time.
template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;
  virtual const char* kind() const = 0;
  virtual const std::string& name() const = 0;
  virtual Tensor<T> forward(const Tensor<T>& x) = 0;
  virtual Tensor<T> backward(const Tensor<T>& dy) = 0;
  virtual std::vector<Param<T>*> params() { return {}; }
};

template <typename T>
T glorot_limit(std::size_t fan_in, std::size_t fan_out) {
  return static_cast<T>(std::sqrt(6.0 / static_cast<double>(fan_in + fan_out)));
}

template <typename T>
void fill_uniform(Tensor<T>& t, Rng& rng, T limit) {
  for (T& v : t.values) v = static_cast<T>(rng.uniform(-limit, limit));
}

// ---------------------------------------------------------------------------
// Conv2d: stride-1 cross-correlation with "same" zero padding, odd kernels.
// Input (H, W, C_in), kernel (kh, kw, C_in, C_out), output (H, W, C_out).
// ---------------------------------------------------------------------------
template <typename T>
class Conv2d final : public Layer<T> {
 public:
  Conv2d(std::string name, int kh, int kw, int c_in, int c_out)
      : name_(std::move(name)),
        kh_(kh),
        kw_(kw),
        c_in_(c_in),
        c_out_(c_out),
        weight_(name_ + ".weight", {kh, kw, c_in, c_out}),
        bias_(name_ + ".bias", {c_out}) {
    if (kh < 1 || kw < 1 || kh % 2 == 0 || kw % 2 == 0) {
      throw ShapeError(name_ + ": kernel dims must be odd and >= 1 for same padding");
    }
  }

  const char* kind() const override { return "conv2d"; }
  const std::string& name() const override { return name_; }
  std::vector<Param<T>*> params() override { return {&weight_, &bias_}; }

  void init(Rng& rng) {
    const std::size_t patch = static_cast<std::size_t>(kh_) * kw_;
    fill_uniform(weight_.value, rng, glorot_limit<T>(patch * c_in_, patch * c_out_));
    std::fill(bias_.value.values.begin(), bias_.value.values.end(), T(0));
  }

  Tensor<T> forward(const Tensor<T>& x) override {
    if (x.shape.size() != 3 || x.dim(2) != c_in_) {
      throw ShapeError(name_ + ": expected (H,W," + std::to_string(c_in_) + "), got " +
                       shape_string(x));
    }
    h_ = x.dim(0);
    w_ = x.dim(1);
    im2col(x);

    Tensor<T> y({h_, w_, c_out_});
    const std::size_t positions = static_cast<std::size_t>(h_) * w_;
    const std::size_t patch = static_cast<std::size_t>(kh_) * kw_ * c_in_;
    ConstMatMap<T> cols(cols_.data(), static_cast<Eigen::Index>(positions),
                        static_cast<Eigen::Index>(patch));
    ConstMatMap<T> wmat(weight_.value.data(), static_cast<Eigen::Index>(patch), c_out_);
    MatMap<T> ymat(y.data(), static_cast<Eigen::Index>(positions), c_out_);
    ymat.noalias() = cols * wmat;
    ymat.rowwise() += ConstVecMap<T>(bias_.value.data(), c_out_).transpose();
    return y;
  }

  Tensor<T> backward(const Tensor<T>& dy) override {
    if (dy.shape.size() != 3 || dy.dim(0) != h_ || dy.dim(1) != w_ || dy.dim(2) != c_out_) {
      throw ShapeError(name_ + ": gradient shape mismatch");
    }
    const std::size_t positions = static_cast<std::size_t>(h_) * w_;
    const std::size_t patch = static_cast<std::size_t>(kh_) * kw_ * c_in_;

    ConstMatMap<T> cols(cols_.data(), static_cast<Eigen::Index>(positions),
                        static_cast<Eigen::Index>(patch));
    ConstMatMap<T> dymat(dy.data(), static_cast<Eigen::Index>(positions), c_out_);
    MatMap<T> dw(weight_.value.grad.data(), static_cast<Eigen::Index>(patch), c_out_);
    dw.noalias() += cols.transpose() * dymat;
    VecMap<T>(bias_.value.grad.data(), c_out_) += dymat.colwise().sum().transpose();

    dcols_.assign(positions * patch, T(0));
    MatMap<T> dcols(dcols_.data(), static_cast<Eigen::Index>(positions),
                    static_cast<Eigen::Index>(patch));
    ConstMatMap<T> wmat(weight_.value.data(), static_cast<Eigen::Index>(patch), c_out_);
    dcols.noalias() = dymat * wmat.transpose();

    return col2im();
  }

 private:
  void im2col(const Tensor<T>& x) {
    const int ph = kh_ / 2, pw = kw_ / 2;
    const std::size_t patch = static_cast<std::size_t>(kh_) * kw_ * c_in_;
    cols_.assign(static_cast<std::size_t>(h_) * w_ * patch, T(0));
    for (int i = 0; i < h_; ++i) {
      for (int j = 0; j < w_; ++j) {
        T* row = cols_.data() + (static_cast<std::size_t>(i) * w_ + j) * patch;
        for (int u = 0; u < kh_; ++u) {
          const int si = i + u - ph;
          if (si < 0 || si >= h_) continue;
          for (int v = 0; v < kw_; ++v) {
            const int sj = j + v - pw;
            if (sj < 0 || sj >= w_) continue;
            const T* src = x.data() + (static_cast<std::size_t>(si) * w_ + sj) * c_in_;
            std::copy(src, src + c_in_, row + (static_cast<std::size_t>(u) * kw_ + v) * c_in_);
          }
        }
      }
    }
  }

  Tensor<T> col2im() const {
    const int ph = kh_ / 2, pw = kw_ / 2;
    const std::size_t patch = static_cast<std::size_t>(kh_) * kw_ * c_in_;
    Tensor<T> dx({h_, w_, c_in_});
    for (int i = 0; i < h_; ++i) {
      for (int j = 0; j < w_; ++j) {
        const T* row = dcols_.data() + (static_cast<std::size_t>(i) * w_ + j) * patch;
        for (int u = 0; u < kh_; ++u) {
          const int si = i + u - ph;
          if (si < 0 || si >= h_) continue;
          for (int v = 0; v < kw_; ++v) {
            const int sj = j + v - pw;
            if (sj < 0 || sj >= w_) continue;
            T* dst = dx.data() + (static_cast<std::size_t>(si) * w_ + sj) * c_in_;
            const T* src = row + (static_cast<std::size_t>(u) * kw_ + v) * c_in_;
            for (int c = 0; c < c_in_; ++c) dst[c] += src[c];
          }
        }
      }
    }
    return dx;
  }

  std::string name_;
  int kh_, kw_, c_in_, c_out_;
  Param<T> weight_, bias_;
  int h_ = 0, w_ = 0;
  AlignedVector<T> cols_, dcols_;
};

// ---------------------------------------------------------------------------
// MaxPool2d: kernel == stride, ceil-mode output with truncated edge windows.
// Ties route the gradient to the lowest linear index in the window.
// ---------------------------------------------------------------------------
template <typename T>
class MaxPool2d final : public Layer<T> {
 public:
  MaxPool2d(std::string name, int sh, int sw)
      : name_(std::move(name)), sh_(sh), sw_(sw) {
    if (sh < 1 || sw < 1) throw ShapeError(name_ + ": stride must be >= 1");
  }

  const char* kind() const override { return "maxpool2d"; }
  const std::string& name() const override { return name_; }

  static int ceil_div(int a, int b) { return (a + b - 1) / b; }

  Tensor<T> forward(const Tensor<T>& x) override {
    if (x.shape.size() != 3 || x.dim(0) == 0 || x.dim(1) == 0) {
      throw ShapeError(name_ + ": expected non-empty (H,W,C), got " + shape_string(x));
    }
    h_ = x.dim(0);
    w_ = x.dim(1);
    c_ = x.dim(2);
    const int oh = ceil_div(h_, sh_), ow = ceil_div(w_, sw_);
    Tensor<T> y({oh, ow, c_});
    argmax_.resize(y.size());
    for (int i = 0; i < oh; ++i) {
      for (int j = 0; j < ow; ++j) {
        for (int c = 0; c < c_; ++c) {
          T best{};
          std::size_t best_idx = 0;
          bool first = true;
          for (int u = i * sh_; u < std::min((i + 1) * sh_, h_); ++u) {
            for (int v = j * sw_; v < std::min((j + 1) * sw_, w_); ++v) {
              const std::size_t idx = (static_cast<std::size_t>(u) * w_ + v) * c_ + c;
              const T val = x.values[idx];
              if (first || val > best) {
                best = val;
                best_idx = idx;
                first = false;
              }
            }
          }
          const std::size_t out_idx = (static_cast<std::size_t>(i) * ow + j) * c_ + c;
          y.values[out_idx] = best;
          argmax_[out_idx] = best_idx;
        }
      }
    }
    return y;
  }

  Tensor<T> backward(const Tensor<T>& dy) override {
    Tensor<T> dx({h_, w_, c_});
    for (std::size_t i = 0; i < dy.size(); ++i) {
      dx.values[argmax_[i]] += dy.values[i];
    }
    return dx;
  }

 private:
  std::string name_;
  int sh_, sw_;
  int h_ = 0, w_ = 0, c_ = 0;
  std::vector<std::size_t> argmax_;
};

// ---------------------------------------------------------------------------
// ReLU; gradient is zero wherever x <= 0.
// ---------------------------------------------------------------------------
template <typename T>
class Relu final : public Layer<T> {
 public:
  explicit Relu(std::string name) : name_(std::move(name)) {}

  const char* kind() const override { return "relu"; }
  const std::string& name() const override { return name_; }

  Tensor<T> forward(const Tensor<T>& x) override {
    Tensor<T> y = x;
    mask_.assign(x.size(), false);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x.values[i] > T(0)) {
        mask_[i] = true;
      } else {
        y.values[i] = T(0);
      }
    }
    return y;
  }

  Tensor<T> backward(const Tensor<T>& dy) override {
    Tensor<T> dx = dy;
    for (std::size_t i = 0; i < dx.size(); ++i) {
      if (!mask_[i]) dx.values[i] = T(0);
    }
    return dx;
  }

 private:
  std::string name_;
  std::vector<bool> mask_;
};

// ---------------------------------------------------------------------------
// MapToSequence: (H, W, C) feature map -> (W, H*C) sequence; width is the
// time axis, step features are laid out h-major.
// ---------------------------------------------------------------------------
template <typename T>
class MapToSequence final : public Layer<T> {
 public:
  explicit MapToSequence(std::string name) : name_(std::move(name)) {}

  const char* kind() const override { return "map_to_sequence"; }
  const std::string& name() const override { return name_; }

  Tensor<T> forward(const Tensor<T>& x) override {
    if (x.shape.size() != 3) throw ShapeError(name_ + ": expected (H,W,C)");
    h_ = x.dim(0);
    w_ = x.dim(1);
    c_ = x.dim(2);
    Tensor<T> y({w_, h_ * c_});
    for (int t = 0; t < w_; ++t) {
      for (int h = 0; h < h_; ++h) {
        for (int c = 0; c < c_; ++c) {
          y.at(t, h * c_ + c) = x.at(h, t, c);
        }
      }
    }
    return y;
  }

  Tensor<T> backward(const Tensor<T>& dy) override {
    Tensor<T> dx({h_, w_, c_});
    for (int t = 0; t < w_; ++t) {
      for (int h = 0; h < h_; ++h) {
        for (int c = 0; c < c_; ++c) {
          dx.at(h, t, c) = dy.at(t, h * c_ + c);
        }
      }
    }
    return dx;
  }

 private:
  std::string name_;
  int h_ = 0, w_ = 0, c_ = 0;
};

// ---------------------------------------------------------------------------
// Bidirectional GRU. Cell convention:
//   z_t = sigmoid(Wz x_t + Uz h_{t-1} + bz)
//   r_t = sigmoid(Wr x_t + Ur h_{t-1} + br)
//   g_t = tanh(Wh x_t + Uh (r_t . h_{t-1}) + bh)
//   h_t = (1 - z_t) . h_{t-1} + z_t . g_t,   h_0 = 0
// Output step t concatenates [h_fwd(t); h_bwd(t)].
// ---------------------------------------------------------------------------
template <typename T>
class BiGru final : public Layer<T> {
 public:
  BiGru(std::string name, int in_features, int units_per_direction)
      : name_(std::move(name)), in_(in_features), units_(units_per_direction) {
    for (int d = 0; d < 2; ++d) {
      const char* tag = d == 0 ? "fwd" : "bwd";
      dir_[d].wz = make_param(tag, "wz", {units_, in_});
      dir_[d].uz = make_param(tag, "uz", {units_, units_});
      dir_[d].bz = make_param(tag, "bz", {units_});
      dir_[d].wr = make_param(tag, "wr", {units_, in_});
      dir_[d].ur = make_param(tag, "ur", {units_, units_});
      dir_[d].br = make_param(tag, "br", {units_});
      dir_[d].wh = make_param(tag, "wh", {units_, in_});
      dir_[d].uh = make_param(tag, "uh", {units_, units_});
      dir_[d].bh = make_param(tag, "bh", {units_});
    }
  }

  const char* kind() const override { return "bigru"; }
  const std::string& name() const override { return name_; }

  std::vector<Param<T>*> params() override {
    std::vector<Param<T>*> out;
    for (auto& d : dir_) {
      for (auto* p : {&d.wz, &d.uz, &d.bz, &d.wr, &d.ur, &d.br, &d.wh, &d.uh, &d.bh}) {
        out.push_back(p->get());
      }
    }
    return out;
  }

  void init(Rng& rng) {
    for (auto& d : dir_) {
      const T wl = glorot_limit<T>(in_, units_);
      const T ul = glorot_limit<T>(units_, units_);
      fill_uniform(d.wz->value, rng, wl);
      fill_uniform(d.uz->value, rng, ul);
      fill_uniform(d.wr->value, rng, wl);
      fill_uniform(d.ur->value, rng, ul);
      fill_uniform(d.wh->value, rng, wl);
      fill_uniform(d.uh->value, rng, ul);
      for (auto* b : {d.bz.get(), d.br.get(), d.bh.get()}) {
        std::fill(b->value.values.begin(), b->value.values.end(), T(0));
      }
    }
  }

  Tensor<T> forward(const Tensor<T>& x) override {
    if (x.shape.size() != 2 || x.dim(1) != in_) {
      throw ShapeError(name_ + ": expected (T," + std::to_string(in_) + "), got " +
                       shape_string(x));
    }
    steps_ = x.dim(0);
    if (steps_ == 0) throw ShapeError(name_ + ": zero-length sequence");
    x_ = x;

    Tensor<T> y({steps_, 2 * units_});
    for (int d = 0; d < 2; ++d) {
      run_direction(d, x, y);
    }
    return y;
  }

  Tensor<T> backward(const Tensor<T>& dy) override {
    if (dy.shape.size() != 2 || dy.dim(0) != steps_ || dy.dim(1) != 2 * units_) {
      throw ShapeError(name_ + ": gradient shape mismatch");
    }
    Tensor<T> dx({steps_, in_});
    for (int d = 0; d < 2; ++d) {
      backward_direction(d, dy, dx);
    }
    return dx;
  }

 private:
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  struct Direction {
    std::unique_ptr<Param<T>> wz, uz, bz, wr, ur, br, wh, uh, bh;
    // caches, one row per step
    EigenRowMajor<T> z, r, g, h_prev;
  };

  std::unique_ptr<Param<T>> make_param(const char* tag, const char* gate, std::vector<int> shape) {
    return std::make_unique<Param<T>>(name_ + "." + tag + "." + gate, std::move(shape));
  }

  static T sigmoid(T v) { return T(1) / (T(1) + std::exp(-v)); }

  ConstMatMap<T> mat(const Param<T>& p) const {
    return ConstMatMap<T>(p.value.data(), p.value.dim(0), p.value.dim(1));
  }
  ConstVecMap<T> vec(const Param<T>& p) const {
    return ConstVecMap<T>(p.value.data(), p.value.dim(0));
  }
  MatMap<T> mat_grad(Param<T>& p) {
    return MatMap<T>(p.value.grad.data(), p.value.dim(0), p.value.dim(1));
  }
  VecMap<T> vec_grad(Param<T>& p) { return VecMap<T>(p.value.grad.data(), p.value.dim(0)); }

  void run_direction(int d, const Tensor<T>& x, Tensor<T>& y) {
    Direction& dir = dir_[d];
    dir.z.resize(steps_, units_);
    dir.r.resize(steps_, units_);
    dir.g.resize(steps_, units_);
    dir.h_prev.resize(steps_, units_);

    Vec h = Vec::Zero(units_);
    for (int s = 0; s < steps_; ++s) {
      const int t = d == 0 ? s : steps_ - 1 - s;
      ConstVecMap<T> xt(x.data() + static_cast<std::size_t>(t) * in_, in_);
      dir.h_prev.row(s) = h.transpose();
      Vec z = (mat(*dir.wz) * xt + mat(*dir.uz) * h + vec(*dir.bz)).unaryExpr(&sigmoid);
      Vec r = (mat(*dir.wr) * xt + mat(*dir.ur) * h + vec(*dir.br)).unaryExpr(&sigmoid);
      Vec g = (mat(*dir.wh) * xt + mat(*dir.uh) * (r.cwiseProduct(h)) + vec(*dir.bh))
                  .array()
                  .tanh()
                  .matrix();
      h = (Vec::Ones(units_) - z).cwiseProduct(h) + z.cwiseProduct(g);
      dir.z.row(s) = z.transpose();
      dir.r.row(s) = r.transpose();
      dir.g.row(s) = g.transpose();
      for (int u = 0; u < units_; ++u) {
        y.at(t, d * units_ + u) = h(u);
      }
    }
  }

  void backward_direction(int d, const Tensor<T>& dy, Tensor<T>& dx) {
    Direction& dir = dir_[d];
    Vec dh_next = Vec::Zero(units_);  // gradient flowing into h_t from step t+1
    for (int s = steps_ - 1; s >= 0; --s) {
      const int t = d == 0 ? s : steps_ - 1 - s;
      ConstVecMap<T> xt(x_.data() + static_cast<std::size_t>(t) * in_, in_);
      Vec dh = dh_next;
      for (int u = 0; u < units_; ++u) {
        dh(u) += dy.at(t, d * units_ + u);
      }
      const Vec z = dir.z.row(s).transpose();
      const Vec r = dir.r.row(s).transpose();
      const Vec g = dir.g.row(s).transpose();
      const Vec hp = dir.h_prev.row(s).transpose();

      const Vec dz = dh.cwiseProduct(g - hp);
      const Vec dg = dh.cwiseProduct(z);
      Vec dhp = dh.cwiseProduct(Vec::Ones(units_) - z);

      const Vec da_h = dg.cwiseProduct(Vec::Ones(units_) - g.cwiseProduct(g));
      const Vec uh_da = mat(*dir.uh).transpose() * da_h;
      const Vec dr = uh_da.cwiseProduct(hp);
      dhp += uh_da.cwiseProduct(r);

      const Vec da_z = dz.cwiseProduct(z.cwiseProduct(Vec::Ones(units_) - z));
      const Vec da_r = dr.cwiseProduct(r.cwiseProduct(Vec::Ones(units_) - r));
      dhp += mat(*dir.uz).transpose() * da_z;
      dhp += mat(*dir.ur).transpose() * da_r;

      mat_grad(*dir.wz).noalias() += da_z * xt.transpose();
      mat_grad(*dir.uz).noalias() += da_z * hp.transpose();
      vec_grad(*dir.bz) += da_z;
      mat_grad(*dir.wr).noalias() += da_r * xt.transpose();
      mat_grad(*dir.ur).noalias() += da_r * hp.transpose();
      vec_grad(*dir.br) += da_r;
      mat_grad(*dir.wh).noalias() += da_h * xt.transpose();
      mat_grad(*dir.uh).noalias() += da_h * (r.cwiseProduct(hp)).transpose();
      vec_grad(*dir.bh) += da_h;

      const Vec dxt = mat(*dir.wz).transpose() * da_z + mat(*dir.wr).transpose() * da_r +
                      mat(*dir.wh).transpose() * da_h;
      for (int f = 0; f < in_; ++f) {
        dx.at(t, f) += dxt(f);
      }
      dh_next = dhp;
    }
  }

  std::string name_;
  int in_, units_;
  int steps_ = 0;
  Tensor<T> x_;
  Direction dir_[2];
};

// ---------------------------------------------------------------------------
// TemporalMean: (T, F) -> (F,), arithmetic mean over steps.
// ---------------------------------------------------------------------------
template <typename T>
class TemporalMean final : public Layer<T> {
 public:
  explicit TemporalMean(std::string name) : name_(std::move(name)) {}

  const char* kind() const override { return "temporal_mean"; }
  const std::string& name() const override { return name_; }

  Tensor<T> forward(const Tensor<T>& x) override {
    if (x.shape.size() != 2 || x.dim(0) == 0) throw ShapeError(name_ + ": expected (T,F)");
    steps_ = x.dim(0);
    features_ = x.dim(1);
    Tensor<T> y({features_});
    for (int t = 0; t < steps_; ++t) {
      for (int f = 0; f < features_; ++f) y.at(f) += x.at(t, f);
    }
    const T inv = T(1) / static_cast<T>(steps_);
    for (T& v : y.values) v *= inv;
    return y;
  }

  Tensor<T> backward(const Tensor<T>& dy) override {
    Tensor<T> dx({steps_, features_});
    const T inv = T(1) / static_cast<T>(steps_);
    for (int t = 0; t < steps_; ++t) {
      for (int f = 0; f < features_; ++f) dx.at(t, f) = dy.at(f) * inv;
    }
    return dx;
  }

 private:
  std::string name_;
  int steps_ = 0, features_ = 0;
};

// ---------------------------------------------------------------------------
// Dense: (F,) -> (units,), y = W x + b.
// ---------------------------------------------------------------------------
template <typename T>
class Dense final : public Layer<T> {
 public:
  Dense(std::string name, int in_features, int units)
      : name_(std::move(name)),
        in_(in_features),
        units_(units),
        weight_(name_ + ".weight", {units, in_features}),
        bias_(name_ + ".bias", {units}) {}

  const char* kind() const override { return "dense"; }
  const std::string& name() const override { return name_; }
  std::vector<Param<T>*> params() override { return {&weight_, &bias_}; }

  void init(Rng& rng) {
    fill_uniform(weight_.value, rng, glorot_limit<T>(in_, units_));
    std::fill(bias_.value.values.begin(), bias_.value.values.end(), T(0));
  }

  Tensor<T> forward(const Tensor<T>& x) override {
    if (x.shape.size() != 1 || x.dim(0) != in_) {
      throw ShapeError(name_ + ": expected (" + std::to_string(in_) + "), got " +
                       shape_string(x));
    }
    x_ = x;
    Tensor<T> y({units_});
    ConstMatMap<T> w(weight_.value.data(), units_, in_);
    VecMap<T>(y.data(), units_).noalias() =
        w * ConstVecMap<T>(x.data(), in_) + ConstVecMap<T>(bias_.value.data(), units_);
    return y;
  }

  Tensor<T> backward(const Tensor<T>& dy) override {
    if (dy.shape.size() != 1 || dy.dim(0) != units_) {
      throw ShapeError(name_ + ": gradient shape mismatch");
    }
    ConstVecMap<T> dyv(dy.data(), units_);
    MatMap<T>(weight_.value.grad.data(), units_, in_).noalias() +=
        dyv * ConstVecMap<T>(x_.data(), in_).transpose();
    VecMap<T>(bias_.value.grad.data(), units_) += dyv;
    Tensor<T> dx({in_});
    VecMap<T>(dx.data(), in_).noalias() =
        ConstMatMap<T>(weight_.value.data(), units_, in_).transpose() * dyv;
    return dx;
  }

 private:
  std::string name_;
  int in_, units_;
  Param<T> weight_, bias_;
  Tensor<T> x_;
};

}  // namespace ssc::nn
