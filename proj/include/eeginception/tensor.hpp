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

namespace eeginc {

// Dense [batch, channels, time] signal carrier. Stored as one channels x
// (batch*time) matrix; sample b occupies the column block [b*time, (b+1)*time).
// Channelwise reductions (batch norm, concat) are then plain rowwise Eigen
// expressions, and per-sample views are contiguous column blocks.
template <typename Scalar>
struct Tensor {
  Index batch = 0;
  Index channels = 0;
  Index time = 0;
  MatX<Scalar> m;  // channels x (batch*time)

  Tensor() = default;
  Tensor(Index b, Index c, Index t) : batch(b), channels(c), time(t) {
    require(b >= 1 && c >= 1 && t >= 1, "tensor: all dims must be >= 1");
    m.setZero(c, b * t);
  }

  auto sample(Index b) { return m.middleCols(b * time, time); }
  auto sample(Index b) const { return m.middleCols(b * time, time); }

  Scalar operator()(Index b, Index c, Index t) const {
    return m(c, b * time + t);
  }
  Scalar& operator()(Index b, Index c, Index t) { return m(c, b * time + t); }

  bool all_finite() const { return m.allFinite(); }

  template <typename Other>
  Tensor<Other> cast() const {
    Tensor<Other> out;
    out.batch = batch;
    out.channels = channels;
    out.time = time;
    out.m = m.template cast<Other>();
    return out;
  }

  static Tensor like(const Tensor& other) {
    return Tensor(other.batch, other.channels, other.time);
  }
};

template <typename Scalar>
bool same_shape(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  return a.batch == b.batch && a.channels == b.channels && a.time == b.time;
}

}  // namespace eeginc
