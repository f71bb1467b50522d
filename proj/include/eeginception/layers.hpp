// Copyright 2026 The eeginception Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "eeginception/rng.hpp"
#include "eeginception/tensor.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace eeginc {

enum class Mode { kTrain, kEval };

// One named parameter (or state buffer) of a layer, with its gradient.
// Layers expose these so the optimizer and the serializer never need to
// know layer internals.
template <typename Scalar>
struct ParamRef {
  std::string name;
  MatX<Scalar>* value = nullptr;
  MatX<Scalar>* grad = nullptr;  // null for non-trainable state buffers
};

template <typename Scalar>
Index param_count(const std::vector<ParamRef<Scalar>>& refs,
                  bool trainable_only = true) {
  Index n = 0;
  for (const auto& r : refs) {
    if (trainable_only && r.grad == nullptr) continue;
    n += r.value->size();
  }
  return n;
}

// ---------------------------------------------------------------------------
// 1-D convolution, stride 1, "same" zero padding, cross-correlation layout.
//
// weight(o, k*in_channels + i) holds w[o][i][k]; tap k is the contiguous
// block weight.middleCols(k*in_channels, in_channels), so the whole forward
// pass is K small GEMMs on shifted column ranges:
//   y[:, t] = bias + sum_k  W_k * x[:, t + k - pad]
// ---------------------------------------------------------------------------
template <typename Scalar>
class Conv1d {
 public:
  Conv1d() = default;
  Conv1d(Index in_channels, Index out_channels, Index kernel, Rng& rng)
      : in_(in_channels), out_(out_channels), k_(kernel) {
    require(kernel % 2 == 1, "conv1d: kernel size must be odd, got " +
                                 std::to_string(kernel));
    weight_.resize(out_, in_ * k_);
    bias_.resize(out_, 1);
    const double bound = std::sqrt(1.0 / static_cast<double>(in_ * k_));
    for (Index j = 0; j < weight_.cols(); ++j)
      for (Index i = 0; i < weight_.rows(); ++i)
        weight_(i, j) = static_cast<Scalar>(rng.uniform(-bound, bound));
    for (Index i = 0; i < out_; ++i)
      bias_(i, 0) = static_cast<Scalar>(rng.uniform(-bound, bound));
    zero_grad();
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x) {
    require(x.channels == in_, "conv1d: expected " + std::to_string(in_) +
                                   " input channels, got " +
                                   std::to_string(x.channels));
    input_ = x;
    Tensor<Scalar> y(x.batch, out_, x.time);
    const Index pad = (k_ - 1) / 2;
    for (Index b = 0; b < x.batch; ++b) {
      auto xs = x.sample(b);
      auto ys = y.sample(b);
      for (Index k = 0; k < k_; ++k) {
        const Index d = k - pad;
        const Index lo = std::max<Index>(0, -d);
        const Index n = x.time - std::abs(d);
        if (n <= 0) continue;
        ys.middleCols(lo, n).noalias() +=
            weight_.middleCols(k * in_, in_) * xs.middleCols(lo + d, n);
      }
      ys.colwise() += bias_.col(0);
    }
    return y;
  }

  // Accumulates weight/bias gradients; returns the input gradient.
  Tensor<Scalar> backward(const Tensor<Scalar>& dy) {
    const Tensor<Scalar>& x = input_;
    require(dy.channels == out_ && dy.batch == x.batch && dy.time == x.time,
            "conv1d backward: upstream gradient shape mismatch");
    Tensor<Scalar> dx(x.batch, in_, x.time);
    const Index pad = (k_ - 1) / 2;
    for (Index b = 0; b < x.batch; ++b) {
      auto xs = x.sample(b);
      auto ds = dy.sample(b);
      auto dxs = dx.sample(b);
      for (Index k = 0; k < k_; ++k) {
        const Index d = k - pad;
        const Index lo = std::max<Index>(0, -d);
        const Index n = x.time - std::abs(d);
        if (n <= 0) continue;
        dxs.middleCols(lo + d, n).noalias() +=
            weight_.middleCols(k * in_, in_).transpose() * ds.middleCols(lo, n);
        wgrad_.middleCols(k * in_, in_).noalias() +=
            ds.middleCols(lo, n) * xs.middleCols(lo + d, n).transpose();
      }
      bgrad_.col(0) += ds.rowwise().sum();
    }
    return dx;
  }

  void zero_grad() {
    wgrad_.setZero(out_, in_ * k_);
    bgrad_.setZero(out_, 1);
  }

  std::vector<ParamRef<Scalar>> params(const std::string& prefix) {
    return {{prefix + ".weight", &weight_, &wgrad_},
            {prefix + ".bias", &bias_, &bgrad_}};
  }

  Index n_params() const { return out_ * in_ * k_ + out_; }
  Index in_channels() const { return in_; }
  Index out_channels() const { return out_; }
  Index kernel() const { return k_; }

  MatX<Scalar>& weight() { return weight_; }
  MatX<Scalar>& bias() { return bias_; }

 private:
  Index in_ = 0, out_ = 0, k_ = 1;
  MatX<Scalar> weight_, bias_;
  MatX<Scalar> wgrad_, bgrad_;
  Tensor<Scalar> input_;
};

// ---------------------------------------------------------------------------
// Max pooling, stride 1, "same" padding with -inf (padded slots never win).
// Ties go to the lowest index; the backward pass routes the upstream
// gradient to the stored argmax only.
// ---------------------------------------------------------------------------
template <typename Scalar>
class MaxPool1d {
 public:
  MaxPool1d() = default;
  explicit MaxPool1d(Index kernel) : k_(kernel) {
    require(kernel >= 1, "maxpool1d: kernel must be >= 1");
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x) {
    require(x.time >= 1, "maxpool1d: empty time axis");
    in_shape_ = {x.batch, x.channels, x.time};
    Tensor<Scalar> y(x.batch, x.channels, x.time);
    argmax_.resize(x.channels, x.batch * x.time);
    const Index pad = (k_ - 1) / 2;
    // Monotonic-deque sliding max, O(T) per channel. Only strictly smaller
    // values are evicted from the back, so the front is always the earliest
    // index among ties.
    std::vector<Index> deque(static_cast<size_t>(x.time));
    for (Index b = 0; b < x.batch; ++b) {
      auto xs = x.sample(b);
      auto ys = y.sample(b);
      for (Index c = 0; c < x.channels; ++c) {
        size_t head = 0, tail = 0;  // [head, tail) into deque
        Index next_in = 0;
        for (Index t = 0; t < x.time; ++t) {
          const Index hi = std::min<Index>(x.time - 1, t + pad);
          for (; next_in <= hi; ++next_in) {
            while (tail > head && xs(c, deque[tail - 1]) < xs(c, next_in))
              --tail;
            deque[tail++] = next_in;
          }
          while (deque[head] < t - pad) ++head;
          ys(c, t) = xs(c, deque[head]);
          argmax_(c, b * x.time + t) = deque[head];
        }
      }
    }
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) {
    Tensor<Scalar> dx(in_shape_.batch, in_shape_.channels, in_shape_.time);
    for (Index b = 0; b < dy.batch; ++b) {
      auto ds = dy.sample(b);
      auto dxs = dx.sample(b);
      for (Index c = 0; c < dy.channels; ++c)
        for (Index t = 0; t < dy.time; ++t)
          dxs(c, argmax_(c, b * dy.time + t)) += ds(c, t);
    }
    return dx;
  }

  Index kernel() const { return k_; }

 private:
  struct Shape {
    Index batch, channels, time;
  };
  Index k_ = 1;
  Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> argmax_;
  Shape in_shape_{0, 0, 0};
};

// ---------------------------------------------------------------------------
// Per-channel batch normalization over (batch, time).
//
// Train mode normalizes with biased batch variance and maintains running
// statistics by exponential moving average (unbiased variance goes into the
// running buffer, matching the usual framework convention). Eval mode uses
// the running statistics; before any update those are mean 0 / var 1.
// Learnable parameters are gamma and beta only (2 per channel).
// ---------------------------------------------------------------------------
template <typename Scalar>
class BatchNorm1d {
 public:
  BatchNorm1d() = default;
  explicit BatchNorm1d(Index channels, double epsilon = 1e-5,
                       double momentum = 0.1)
      : c_(channels), eps_(epsilon), momentum_(momentum) {
    gamma_.setOnes(c_, 1);
    beta_.setZero(c_, 1);
    running_mean_.setZero(c_, 1);
    running_var_.setOnes(c_, 1);
    zero_grad();
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) {
    require(x.channels == c_, "batchnorm1d: expected " + std::to_string(c_) +
                                  " channels, got " +
                                  std::to_string(x.channels));
    mode_ = mode;
    Tensor<Scalar> y = Tensor<Scalar>::like(x);
    const Index n = x.batch * x.time;
    if (mode == Mode::kTrain) {
      require(n >= 2, "batchnorm1d: train mode needs batch*time >= 2");
      VecX<Scalar> mean = x.m.rowwise().mean();
      MatX<Scalar> centered = x.m.colwise() - mean;
      VecX<Scalar> var =
          centered.array().square().matrix().rowwise().mean();
      inv_std_ =
          (var.array() + static_cast<Scalar>(eps_)).rsqrt().matrix();
      xhat_ = inv_std_.asDiagonal() * centered;
      y.m = gamma_.col(0).asDiagonal() * xhat_;
      y.m.colwise() += beta_.col(0);
      const Scalar unbias =
          static_cast<Scalar>(n) / static_cast<Scalar>(n - 1);
      const Scalar keep = static_cast<Scalar>(1.0 - momentum_);
      const Scalar mom = static_cast<Scalar>(momentum_);
      running_mean_.col(0) = keep * running_mean_.col(0) + mom * mean;
      running_var_.col(0) = keep * running_var_.col(0) + (mom * unbias) * var;
    } else {
      VecX<Scalar> inv =
          (running_var_.col(0).array() + static_cast<Scalar>(eps_))
              .rsqrt()
              .matrix();
      MatX<Scalar> centered = x.m.colwise() - running_mean_.col(0);
      y.m = (gamma_.col(0).array() * inv.array()).matrix().asDiagonal() *
            centered;
      y.m.colwise() += beta_.col(0);
      eval_scale_ = (gamma_.col(0).array() * inv.array()).matrix();
    }
    return y;
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) {
    Tensor<Scalar> dx = Tensor<Scalar>::like(dy);
    if (mode_ == Mode::kEval) {
      dx.m = eval_scale_.asDiagonal() * dy.m;
      return dx;
    }
    const Index n = dy.batch * dy.time;
    // d xhat
    MatX<Scalar> dxh = gamma_.col(0).asDiagonal() * dy.m;
    VecX<Scalar> sum_dxh = dxh.rowwise().sum();
    VecX<Scalar> sum_dxh_xhat =
        (dxh.array() * xhat_.array()).matrix().rowwise().sum();
    // Full batch-statistics chain rule, folded into one expression per row.
    ArrX<Scalar> scale = inv_std_.array() / static_cast<Scalar>(n);
    dx.m = (((static_cast<Scalar>(n) * dxh.array() -
              xhat_.array().colwise() * sum_dxh_xhat.array())
                 .colwise() -
             sum_dxh.array())
                .colwise() *
            scale)
               .matrix();
    ggrad_.col(0) += (dy.m.array() * xhat_.array()).matrix().rowwise().sum();
    bgrad_.col(0) += dy.m.rowwise().sum();
    return dx;
  }

  void zero_grad() {
    ggrad_.setZero(c_, 1);
    bgrad_.setZero(c_, 1);
  }

  std::vector<ParamRef<Scalar>> params(const std::string& prefix) {
    return {{prefix + ".gamma", &gamma_, &ggrad_},
            {prefix + ".beta", &beta_, &bgrad_}};
  }
  std::vector<ParamRef<Scalar>> buffers(const std::string& prefix) {
    return {{prefix + ".running_mean", &running_mean_, nullptr},
            {prefix + ".running_var", &running_var_, nullptr}};
  }

  Index n_params() const { return 2 * c_; }
  Index channels() const { return c_; }
  double epsilon() const { return eps_; }

  MatX<Scalar>& gamma() { return gamma_; }
  MatX<Scalar>& beta() { return beta_; }
  MatX<Scalar>& running_mean() { return running_mean_; }
  MatX<Scalar>& running_var() { return running_var_; }

 private:
  Index c_ = 0;
  double eps_ = 1e-5;
  double momentum_ = 0.1;
  Mode mode_ = Mode::kTrain;
  MatX<Scalar> gamma_, beta_, running_mean_, running_var_;
  MatX<Scalar> ggrad_, bgrad_;
  MatX<Scalar> xhat_;
  VecX<Scalar> inv_std_;
  VecX<Scalar> eval_scale_;
};

// ---------------------------------------------------------------------------
// ReLU. Subgradient at exactly 0 is 0.
// ---------------------------------------------------------------------------
template <typename Scalar>
class Relu {
 public:
  Tensor<Scalar> forward(const Tensor<Scalar>& x) {
    mask_ = (x.m.array() > Scalar(0)).template cast<Scalar>();
    Tensor<Scalar> y = Tensor<Scalar>::like(x);
    y.m = x.m.cwiseMax(Scalar(0));
    return y;
  }
  Tensor<Scalar> backward(const Tensor<Scalar>& dy) {
    Tensor<Scalar> dx = Tensor<Scalar>::like(dy);
    dx.m = dy.m.array() * mask_.array();
    return dx;
  }

 private:
  MatX<Scalar> mask_;
};

// ---------------------------------------------------------------------------
// Channel-axis concatenation / split. Part order is the caller's branch
// order and is preserved exactly.
// ---------------------------------------------------------------------------
template <typename Scalar>
Tensor<Scalar> concat_channels(const std::vector<const Tensor<Scalar>*>& parts) {
  require(!parts.empty(), "concat: no parts");
  const Index b = parts[0]->batch, t = parts[0]->time;
  Index c = 0;
  for (const auto* p : parts) {
    require(p->batch == b && p->time == t,
            "concat: parts disagree on batch/time");
    c += p->channels;
  }
  Tensor<Scalar> y(b, c, t);
  Index row = 0;
  for (const auto* p : parts) {
    y.m.middleRows(row, p->channels) = p->m;
    row += p->channels;
  }
  return y;
}

template <typename Scalar>
std::vector<Tensor<Scalar>> split_channels(const Tensor<Scalar>& x,
                                           const std::vector<Index>& sizes) {
  std::vector<Tensor<Scalar>> parts;
  Index row = 0;
  for (Index c : sizes) {
    Tensor<Scalar> p(x.batch, c, x.time);
    p.m = x.m.middleRows(row, c);
    row += c;
    parts.push_back(std::move(p));
  }
  require(row == x.channels, "split: sizes do not sum to channel count");
  return parts;
}

// ---------------------------------------------------------------------------
// Global average pool over time: [B,C,T] -> C x B feature matrix (one column
// per sample). Backward spreads the gradient uniformly, 1/T each.
// ---------------------------------------------------------------------------
template <typename Scalar>
class GlobalAvgPool {
 public:
  MatX<Scalar> forward(const Tensor<Scalar>& x) {
    batch_ = x.batch;
    channels_ = x.channels;
    time_ = x.time;
    MatX<Scalar> f(x.channels, x.batch);
    // Column-sequential accumulation pins the summation order; Eigen's
    // rowwise() redux may associate differently per destination alignment,
    // which would make a sample's features depend on its batch position.
    VecX<Scalar> acc(x.channels);
    const Scalar inv_t = Scalar(1) / static_cast<Scalar>(x.time);
    for (Index b = 0; b < x.batch; ++b) {
      acc.setZero();
      auto xs = x.sample(b);
      for (Index t = 0; t < x.time; ++t) acc += xs.col(t);
      f.col(b) = acc * inv_t;
    }
    return f;
  }
  Tensor<Scalar> backward(const MatX<Scalar>& df) {
    Tensor<Scalar> dx(batch_, channels_, time_);
    const Scalar inv_t = Scalar(1) / static_cast<Scalar>(time_);
    for (Index b = 0; b < batch_; ++b)
      dx.sample(b).colwise() = (df.col(b) * inv_t).eval();
    return dx;
  }

 private:
  Index batch_ = 0, channels_ = 0, time_ = 0;
};

// ---------------------------------------------------------------------------
// Affine head on pooled features: logits = W f + b, per column.
// ---------------------------------------------------------------------------
template <typename Scalar>
class Linear {
 public:
  Linear() = default;
  Linear(Index in_features, Index out_features, Rng& rng)
      : in_(in_features), out_(out_features) {
    weight_.resize(out_, in_);
    bias_.resize(out_, 1);
    const double bound = std::sqrt(1.0 / static_cast<double>(in_));
    for (Index j = 0; j < in_; ++j)
      for (Index i = 0; i < out_; ++i)
        weight_(i, j) = static_cast<Scalar>(rng.uniform(-bound, bound));
    for (Index i = 0; i < out_; ++i)
      bias_(i, 0) = static_cast<Scalar>(rng.uniform(-bound, bound));
    zero_grad();
  }

  MatX<Scalar> forward(const MatX<Scalar>& f) {
    require(f.rows() == in_, "linear: expected " + std::to_string(in_) +
                                 " features, got " + std::to_string(f.rows()));
    input_ = f;
    MatX<Scalar> y = weight_ * f;
    y.colwise() += bias_.col(0);
    return y;
  }

  MatX<Scalar> backward(const MatX<Scalar>& dy) {
    wgrad_.noalias() += dy * input_.transpose();
    bgrad_.col(0) += dy.rowwise().sum();
    return weight_.transpose() * dy;
  }

  void zero_grad() {
    wgrad_.setZero(out_, in_);
    bgrad_.setZero(out_, 1);
  }

  std::vector<ParamRef<Scalar>> params(const std::string& prefix) {
    return {{prefix + ".weight", &weight_, &wgrad_},
            {prefix + ".bias", &bias_, &bgrad_}};
  }

  Index n_params() const { return out_ * in_ + out_; }
  MatX<Scalar>& weight() { return weight_; }
  MatX<Scalar>& bias() { return bias_; }

 private:
  Index in_ = 0, out_ = 0;
  MatX<Scalar> weight_, bias_, wgrad_, bgrad_, input_;
};

}  // namespace eeginc
