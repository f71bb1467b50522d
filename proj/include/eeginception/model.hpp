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

#include "eeginception/adam.hpp"
#include "eeginception/layers.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace eeginc {

// Architecture hyperparameters. The binary-class network is
// {in_channels 3, depth 12, kernels {25,75,125}, 2 classes}; the four-class
// one is {22, 48, {25,75,125,175,225}, 4}. Every branch emits `depth`
// channels, so the concat width is (kernels + pooling branch) * depth.
struct ModelConfig {
  int in_channels = 3;
  int depth = 12;
  std::vector<int> kernel_sizes = {25, 75, 125};
  int n_classes = 2;
  int time_len = 750;
  int n_inception = 6;
  int residual_period = 3;
  int pool_kernel = 25;
  std::uint64_t seed = 1;

  int concat_width() const {
    return (static_cast<int>(kernel_sizes.size()) + 1) * depth;
  }

  void validate() const {
    if (in_channels < 1) throw ConfigError("model config: in_channels < 1");
    if (depth < 1) throw ConfigError("model config: depth < 1");
    if (n_classes < 2) throw ConfigError("model config: n_classes < 2");
    if (time_len < 1) throw ConfigError("model config: time_len < 1");
    if (kernel_sizes.empty())
      throw ConfigError("model config: kernel_sizes empty");
    int prev = 0;
    for (int k : kernel_sizes) {
      if (k < 1 || k % 2 == 0)
        throw ConfigError("model config: kernel sizes must be odd, got " +
                          std::to_string(k));
      if (k <= prev)
        throw ConfigError("model config: kernel sizes must be ascending");
      prev = k;
    }
    if (pool_kernel < 1 || pool_kernel % 2 == 0)
      throw ConfigError("model config: pool_kernel must be odd");
    if (n_inception < 1) throw ConfigError("model config: n_inception < 1");
    if (residual_period < 1 || n_inception % residual_period != 0)
      throw ConfigError(
          "model config: n_inception must be divisible by residual_period");
  }
};

// Closed-form parameter count for a config; must always equal the
// materialized model's total.
inline long long count_params(const ModelConfig& cfg) {
  cfg.validate();
  const long long m = cfg.depth;
  const long long w = cfg.concat_width();
  const long long n_in = cfg.in_channels;
  long long temporal = 0;
  for (int k : cfg.kernel_sizes) temporal += m * m * k + m;

  auto conv1x1 = [](long long cin, long long cout) { return cin * cout + cout; };
  const long long bn_w = 2 * w;

  const long long initial = 2 * conv1x1(n_in, m) + temporal + bn_w;
  const long long intermediate = 2 * conv1x1(w, m) + temporal + bn_w;
  const long long n_blocks = cfg.n_inception / cfg.residual_period;
  long long residuals = conv1x1(n_in, w) + bn_w;  // taps the raw input
  for (long long b = 1; b < n_blocks; ++b) residuals += conv1x1(w, w) + bn_w;
  const long long head = w * cfg.n_classes + cfg.n_classes;

  return initial + (cfg.n_inception - 1) * intermediate + residuals + head;
}

// ---------------------------------------------------------------------------
// Inception module: a 1x1 bottleneck feeding parallel temporal convolutions
// (ascending kernel size), plus a max-pool branch with its own 1x1
// projection of the raw module input; branches concatenate to the full
// width, then batch norm and ReLU. The initial module differs from the
// intermediate ones only by its input channel count.
// ---------------------------------------------------------------------------
template <typename Scalar>
class InceptionModule {
 public:
  InceptionModule() = default;
  InceptionModule(Index in_channels, const ModelConfig& cfg, Rng& rng) {
    const Index m = cfg.depth;
    bottleneck_ = Conv1d<Scalar>(in_channels, m, 1, rng);
    for (int k : cfg.kernel_sizes)
      temporal_.emplace_back(m, m, k, rng);
    pool_ = MaxPool1d<Scalar>(cfg.pool_kernel);
    pool_proj_ = Conv1d<Scalar>(in_channels, m, 1, rng);
    bn_ = BatchNorm1d<Scalar>(cfg.concat_width());
  }

  Tensor<Scalar> forward(const Tensor<Scalar>& x, Mode mode) {
    Tensor<Scalar> b = bottleneck_.forward(x);
    std::vector<Tensor<Scalar>> parts;
    parts.reserve(temporal_.size() + 1);
    for (auto& conv : temporal_) parts.push_back(conv.forward(b));
    Tensor<Scalar> pooled = pool_.forward(x);
    parts.push_back(pool_proj_.forward(pooled));
    std::vector<const Tensor<Scalar>*> views;
    for (const auto& p : parts) views.push_back(&p);
    Tensor<Scalar> cat = concat_channels(views);
    return relu_.forward(bn_.forward(cat, mode));
  }

  Tensor<Scalar> backward(const Tensor<Scalar>& dy) {
    Tensor<Scalar> dcat = bn_.backward(relu_.backward(dy));
    const Index m = bottleneck_.out_channels();
    std::vector<Index> sizes(temporal_.size() + 1, m);
    auto dparts = split_channels(dcat, sizes);

    Tensor<Scalar> db(dy.batch, m, dy.time);
    for (size_t i = 0; i < temporal_.size(); ++i) {
      Tensor<Scalar> d = temporal_[i].backward(dparts[i]);
      db.m += d.m;
    }
    Tensor<Scalar> dx = bottleneck_.backward(db);
    Tensor<Scalar> dpool = pool_.backward(pool_proj_.backward(dparts.back()));
    dx.m += dpool.m;
    return dx;
  }

  void zero_grad() {
    bottleneck_.zero_grad();
    for (auto& c : temporal_) c.zero_grad();
    pool_proj_.zero_grad();
    bn_.zero_grad();
  }

  void collect_params(const std::string& prefix,
                      std::vector<ParamRef<Scalar>>& out) {
    append(out, bottleneck_.params(prefix + ".bottleneck"));
    for (size_t i = 0; i < temporal_.size(); ++i)
      append(out, temporal_[i].params(prefix + ".conv" + std::to_string(i)));
    append(out, pool_proj_.params(prefix + ".pool_proj"));
    append(out, bn_.params(prefix + ".bn"));
  }
  void collect_buffers(const std::string& prefix,
                       std::vector<ParamRef<Scalar>>& out) {
    append(out, bn_.buffers(prefix + ".bn"));
  }

  Index n_params() const {
    Index n = bottleneck_.n_params() + pool_proj_.n_params() + bn_.n_params();
    for (const auto& c : temporal_) n += c.n_params();
    return n;
  }

  BatchNorm1d<Scalar>& bn() { return bn_; }
  Conv1d<Scalar>& bottleneck() { return bottleneck_; }

 private:
  static void append(std::vector<ParamRef<Scalar>>& out,
                     std::vector<ParamRef<Scalar>> more) {
    out.insert(out.end(), more.begin(), more.end());
  }

  Conv1d<Scalar> bottleneck_;
  std::vector<Conv1d<Scalar>> temporal_;
  MaxPool1d<Scalar> pool_;
  Conv1d<Scalar> pool_proj_;
  BatchNorm1d<Scalar> bn_;
  Relu<Scalar> relu_;
};

// ---------------------------------------------------------------------------
// Residual projection: out = ReLU(main + BN(conv1x1(tap))). The first block
// taps the raw network input; each later block taps the previous block's
// output.
// ---------------------------------------------------------------------------
template <typename Scalar>
class ResidualBlock {
 public:
  ResidualBlock() = default;
  ResidualBlock(Index tap_channels, Index out_channels, Rng& rng)
      : proj_(tap_channels, out_channels, 1, rng),
        bn_(BatchNorm1d<Scalar>(out_channels)) {}

  Tensor<Scalar> forward(const Tensor<Scalar>& tap, const Tensor<Scalar>& main,
                         Mode mode) {
    require(main.channels == proj_.out_channels(),
            "residual: main channel mismatch");
    Tensor<Scalar> r = bn_.forward(proj_.forward(tap), mode);
    Tensor<Scalar> sum = Tensor<Scalar>::like(main);
    sum.m = main.m + r.m;
    return relu_.forward(sum);
  }

  // Returns (d_main, d_tap).
  std::pair<Tensor<Scalar>, Tensor<Scalar>> backward(const Tensor<Scalar>& dy) {
    Tensor<Scalar> dsum = relu_.backward(dy);
    Tensor<Scalar> dtap = proj_.backward(bn_.backward(dsum));
    return {std::move(dsum), std::move(dtap)};
  }

  void zero_grad() {
    proj_.zero_grad();
    bn_.zero_grad();
  }
  void collect_params(const std::string& prefix,
                      std::vector<ParamRef<Scalar>>& out) {
    auto p = proj_.params(prefix + ".proj");
    out.insert(out.end(), p.begin(), p.end());
    auto b = bn_.params(prefix + ".bn");
    out.insert(out.end(), b.begin(), b.end());
  }
  void collect_buffers(const std::string& prefix,
                       std::vector<ParamRef<Scalar>>& out) {
    auto b = bn_.buffers(prefix + ".bn");
    out.insert(out.end(), b.begin(), b.end());
  }
  Index n_params() const { return proj_.n_params() + bn_.n_params(); }

  Conv1d<Scalar>& proj() { return proj_; }
  BatchNorm1d<Scalar>& bn() { return bn_; }

 private:
  Conv1d<Scalar> proj_;
  BatchNorm1d<Scalar> bn_;
  Relu<Scalar> relu_;
};

// ---------------------------------------------------------------------------
// The full network: one initial inception module, n_inception-1 intermediate
// ones, a residual block after every residual_period modules, then a global
// average pool over time and a linear head.
// ---------------------------------------------------------------------------
template <typename Scalar>
class EegInception {
 public:
  EegInception() = default;

  explicit EegInception(const ModelConfig& cfg) : cfg_(cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const Index w = cfg.concat_width();
    modules_.emplace_back(cfg.in_channels, cfg, rng);
    for (int i = 1; i < cfg.n_inception; ++i) modules_.emplace_back(w, cfg, rng);
    const int n_blocks = cfg.n_inception / cfg.residual_period;
    for (int b = 0; b < n_blocks; ++b) {
      const Index tap_ch = (b == 0) ? cfg.in_channels : w;
      residuals_.emplace_back(tap_ch, w, rng);
    }
    head_ = Linear<Scalar>(w, cfg.n_classes, rng);
  }

  const ModelConfig& config() const { return cfg_; }

  MatX<Scalar> forward(const Tensor<Scalar>& input, Mode mode) {
    require(input.channels == cfg_.in_channels,
            "forward: expected " + std::to_string(cfg_.in_channels) +
                " channels, got " + std::to_string(input.channels));
    require(input.time == cfg_.time_len,
            "forward: expected time length " + std::to_string(cfg_.time_len) +
                ", got " + std::to_string(input.time));
    Tensor<Scalar> tap = input;
    Tensor<Scalar> x = input;
    size_t mod = 0;
    for (size_t b = 0; b < residuals_.size(); ++b) {
      for (int i = 0; i < cfg_.residual_period; ++i, ++mod)
        x = modules_[mod].forward(x, mode);
      x = residuals_[b].forward(tap, x, mode);
      tap = x;
    }
    return head_.forward(gap_.forward(x));
  }

  // Backpropagates from dlogits; gradients accumulate into the layers.
  // Returns the gradient w.r.t. the network input.
  Tensor<Scalar> backward(const MatX<Scalar>& dlogits) {
    MatX<Scalar> df = head_.backward(dlogits);
    Tensor<Scalar> dx = gap_.backward(df);
    size_t mod = modules_.size();
    // Walk the blocks in reverse; each block's tap gradient joins the
    // stream flowing into the previous block's output.
    Tensor<Scalar> dtap_pending;
    for (size_t b = residuals_.size(); b-- > 0;) {
      auto [dmain, dtap] = residuals_[b].backward(dx);
      dx = std::move(dmain);
      for (int i = 0; i < cfg_.residual_period; ++i)
        dx = modules_[--mod].backward(dx);
      if (b > 0) {
        // tap of block b is the output of block b-1
        dx.m += dtap.m;
      } else {
        dtap_pending = std::move(dtap);
      }
    }
    dx.m += dtap_pending.m;  // both reach the raw input
    return dx;
  }

  void zero_grad() {
    for (auto& m : modules_) m.zero_grad();
    for (auto& r : residuals_) r.zero_grad();
    head_.zero_grad();
  }

  std::vector<ParamRef<Scalar>> params() {
    std::vector<ParamRef<Scalar>> out;
    size_t mod = 0;
    for (size_t b = 0; b < residuals_.size(); ++b) {
      for (int i = 0; i < cfg_.residual_period; ++i, ++mod)
        modules_[mod].collect_params("inception" + std::to_string(mod), out);
      residuals_[b].collect_params("residual" + std::to_string(b), out);
    }
    auto h = head_.params("head");
    out.insert(out.end(), h.begin(), h.end());
    return out;
  }

  // Running statistics and other non-trainable state, in a fixed order.
  std::vector<ParamRef<Scalar>> buffers() {
    std::vector<ParamRef<Scalar>> out;
    size_t mod = 0;
    for (size_t b = 0; b < residuals_.size(); ++b) {
      for (int i = 0; i < cfg_.residual_period; ++i, ++mod)
        modules_[mod].collect_buffers("inception" + std::to_string(mod), out);
      residuals_[b].collect_buffers("residual" + std::to_string(b), out);
    }
    return out;
  }

  long long n_params() const {
    long long n = head_.n_params();
    for (const auto& m : modules_) n += m.n_params();
    for (const auto& r : residuals_) n += r.n_params();
    return n;
  }

  // Per-block totals in network order: initial module, intermediate modules
  // interleaved with residual blocks, head. Matches the published summary
  // table layout.
  std::vector<std::pair<std::string, long long>> block_param_counts() const {
    std::vector<std::pair<std::string, long long>> rows;
    size_t mod = 0;
    for (size_t b = 0; b < residuals_.size(); ++b) {
      for (int i = 0; i < cfg_.residual_period; ++i, ++mod) {
        const std::string name =
            mod == 0 ? "initial_inception"
                     : "intermediate_inception_" + std::to_string(mod);
        rows.emplace_back(name, modules_[mod].n_params());
      }
      rows.emplace_back("residual_" + std::to_string(b + 1),
                        residuals_[b].n_params());
    }
    rows.emplace_back("linear_head", head_.n_params());
    return rows;
  }

  std::vector<InceptionModule<Scalar>>& modules() { return modules_; }
  std::vector<ResidualBlock<Scalar>>& residuals() { return residuals_; }
  Linear<Scalar>& head() { return head_; }

 private:
  ModelConfig cfg_;
  std::vector<InceptionModule<Scalar>> modules_;
  std::vector<ResidualBlock<Scalar>> residuals_;
  Linear<Scalar> head_;
  GlobalAvgPool<Scalar> gap_;
};

}  // namespace eeginc
