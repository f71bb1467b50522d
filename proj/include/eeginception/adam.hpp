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

#include "eeginception/layers.hpp"

#include <cmath>
#include <vector>

namespace eeginc {

struct AdamConfig {
  double learning_rate = 0.005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Canonical update divides by sqrt(v_hat) + eps. The alternative places
  // eps under the radical, sqrt(v_hat + eps); the difference is below
  // training noise but both forms are selectable.
  bool eps_inside_sqrt = false;
};

// Moment state for one parameter array.
template <typename Scalar>
struct AdamState {
  MatX<Scalar> m;  // first moment
  MatX<Scalar> v;  // second moment, entrywise >= 0
  long t = 0;

  void init_like(const MatX<Scalar>& p) {
    m.setZero(p.rows(), p.cols());
    v.setZero(p.rows(), p.cols());
    t = 0;
  }
};

// One Adam update on one array. Rejects non-finite gradients before touching
// any state, so a failed step leaves params/state untouched.
template <typename Scalar>
void adam_step(MatX<Scalar>& param, const MatX<Scalar>& grad,
               AdamState<Scalar>& state, const AdamConfig& cfg) {
  require(param.rows() == grad.rows() && param.cols() == grad.cols(),
          "adam: param/grad shape mismatch");
  if (!grad.allFinite()) throw NumericError("adam: non-finite gradient");
  const Scalar b1 = static_cast<Scalar>(cfg.beta1);
  const Scalar b2 = static_cast<Scalar>(cfg.beta2);
  state.t += 1;
  state.m = b1 * state.m + (Scalar(1) - b1) * grad;
  state.v.array() =
      b2 * state.v.array() + (Scalar(1) - b2) * grad.array().square();
  const Scalar corr1 =
      Scalar(1) - static_cast<Scalar>(std::pow(cfg.beta1, state.t));
  const Scalar corr2 =
      Scalar(1) - static_cast<Scalar>(std::pow(cfg.beta2, state.t));
  auto m_hat = state.m.array() / corr1;
  auto v_hat = state.v.array() / corr2;
  const Scalar eps = static_cast<Scalar>(cfg.epsilon);
  const Scalar lr = static_cast<Scalar>(cfg.learning_rate);
  if (cfg.eps_inside_sqrt) {
    param.array() -= lr * m_hat / (v_hat + eps).sqrt();
  } else {
    param.array() -= lr * m_hat / (v_hat.sqrt() + eps);
  }
}

// Drives adam_step over a layer stack's parameter list, matching state to
// parameters by position.
template <typename Scalar>
class AdamOptimizer {
 public:
  explicit AdamOptimizer(AdamConfig cfg = {}) : cfg_(cfg) {}

  void step(const std::vector<ParamRef<Scalar>>& params) {
    if (states_.empty()) {
      states_.resize(params.size());
      for (size_t i = 0; i < params.size(); ++i)
        states_[i].init_like(*params[i].value);
    }
    require(states_.size() == params.size(),
            "adam: parameter list changed size between steps");
    for (size_t i = 0; i < params.size(); ++i) {
      if (params[i].grad == nullptr) continue;
      adam_step(*params[i].value, *params[i].grad, states_[i], cfg_);
    }
  }

  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  std::vector<AdamState<Scalar>> states_;
};

}  // namespace eeginc
