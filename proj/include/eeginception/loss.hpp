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

#include "eeginception/common.hpp"

#include <cmath>
#include <vector>

namespace eeginc {

template <typename Scalar>
struct LossResult {
  double loss = 0.0;
  MatX<Scalar> grad_logits;  // n_classes x batch, already divided by batch
  MatX<Scalar> probs;        // softmax probabilities, n_classes x batch
};

// Mean negative log softmax probability of the true class. Log-sum-exp
// stabilized; the gradient is (softmax - onehot) / batch, so its columns
// sum to zero.
template <typename Scalar>
LossResult<Scalar> softmax_cross_entropy(const MatX<Scalar>& logits,
                                         const std::vector<int>& labels) {
  const Index n_classes = logits.rows();
  const Index batch = logits.cols();
  require(batch >= 1, "cross entropy: empty batch");
  require(static_cast<Index>(labels.size()) == batch,
          "cross entropy: labels/batch size mismatch");

  LossResult<Scalar> out;
  out.probs.resize(n_classes, batch);
  double total = 0.0;
  for (Index b = 0; b < batch; ++b) {
    const int y = labels[b];
    require(y >= 0 && y < n_classes, "cross entropy: label out of range");
    const Scalar mx = logits.col(b).maxCoeff();
    ArrX<Scalar> shifted = logits.col(b).array() - mx;
    ArrX<Scalar> ex = shifted.exp();
    const Scalar z = ex.sum();
    out.probs.col(b) = (ex / z).matrix();
    total += -(static_cast<double>(shifted(y)) -
               std::log(static_cast<double>(z)));
  }
  out.loss = total / static_cast<double>(batch);
  out.grad_logits = out.probs / static_cast<Scalar>(batch);
  for (Index b = 0; b < batch; ++b)
    out.grad_logits(labels[b], b) -= Scalar(1) / static_cast<Scalar>(batch);
  return out;
}

}  // namespace eeginc
