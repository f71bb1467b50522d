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

#include "eeginception/butterworth.hpp"
#include "eeginception/trial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eeginc {

// Per-channel >cutoff content of one trial, extracted with the high-pass
// cascade. Same shape as its source.
struct NoiseCandidate {
  std::string source_id;
  MatX<double> noise;  // channels x length
};

NoiseCandidate extract_noise(const Trial& trial, const SosFilter& filter,
                             bool zero_phase = false);

// The recombination itself: original - own noise + donor noise, evaluated
// as original + (donor - own) so an identical donor reproduces the original
// bit for bit.
inline MatX<double> noise_swap(const MatX<double>& original,
                               const MatX<double>& own_noise,
                               const MatX<double>& donor_noise) {
  require(original.rows() == own_noise.rows() &&
              original.cols() == own_noise.cols() &&
              original.rows() == donor_noise.rows() &&
              original.cols() == donor_noise.cols(),
          "noise_swap: shape mismatch");
  return original + (donor_noise - own_noise);
}

struct AugmentOptions {
  int factor = 3;          // output size = factor * input size
  std::uint64_t seed = 1;
  double cutoff_hz = 100.0;
  int filter_order = 8;
  bool zero_phase = false;
  // Restrict donors to the same class. Off by default: the swapped band is
  // above the cutoff and treated as label-free.
  bool same_class_donors = false;
};

// Which donor's noise went into which synthetic trial.
struct AugmentProvenance {
  std::string synthetic_id;
  Index signal_index;  // i in the recombination
  Index donor_index;   // k
};

struct AugmentResult {
  TrialSet set;  // originals first, then the synthetic trials
  std::vector<AugmentProvenance> provenance;
};

// Noise-swap expansion of a training set: every original trial is kept and
// (factor-1)*n synthetic trials are added. Synthetic trial for source i
// draws donor k != i uniformly from the same subject's trials (optionally
// same class) and recombines as original minus own noise plus donor noise.
// The synthetic trial inherits the signal donor's label. Deterministic per
// seed; donor draws use per-output sub-streams.
AugmentResult augment(const TrialSet& train, const AugmentOptions& options);

}  // namespace eeginc
