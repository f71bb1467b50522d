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
#include "eeginception/common.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace eeginc {

// Central finite-difference check of an analytic gradient, meant to run at
// 64-bit precision.
//
//   fn(x)      -> scalar loss
//   grad_fn(x) -> analytic dloss/dx (same length as x)
//
// Checks up to max_coords coordinates (a seeded random subset when x is
// larger than that, all of them otherwise) and returns the maximum relative
// error with denominator max(|analytic|, |numeric|, 1e-8).
struct GradCheckReport {
  double max_rel_error = 0.0;
  Index worst_coord = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
};

inline GradCheckReport grad_check(
    const std::function<double(const VecX<double>&)>& fn,
    const std::function<VecX<double>(const VecX<double>&)>& grad_fn,
    const VecX<double>& x0, double h = 1e-5, Index max_coords = 50,
    std::uint64_t seed = 0) {
  GradCheckReport report;
  const VecX<double> analytic = grad_fn(x0);
  require(analytic.size() == x0.size(),
          "grad_check: analytic gradient length mismatch");

  std::vector<Index> coords(static_cast<size_t>(x0.size()));
  for (Index i = 0; i < x0.size(); ++i) coords[static_cast<size_t>(i)] = i;
  if (x0.size() > max_coords) {
    Rng rng(mix_seed(seed, 0x67726164));
    rng.shuffle(coords.begin(), coords.end());
    coords.resize(static_cast<size_t>(max_coords));
  }

  VecX<double> x = x0;
  for (Index c : coords) {
    const double keep = x(c);
    x(c) = keep + h;
    const double fp = fn(x);
    x(c) = keep - h;
    const double fm = fn(x);
    x(c) = keep;
    const double numeric = (fp - fm) / (2.0 * h);
    const double denom =
        std::max({std::abs(analytic(c)), std::abs(numeric), 1e-8});
    const double rel = std::abs(analytic(c) - numeric) / denom;
    if (rel > report.max_rel_error) {
      report.max_rel_error = rel;
      report.worst_coord = c;
      report.worst_analytic = analytic(c);
      report.worst_numeric = numeric;
    }
  }
  return report;
}

}  // namespace eeginc
