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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace eeginc {

enum class Split { kUnassigned, kTrain, kTest };

std::string split_name(Split s);
Split split_from_name(const std::string& name);

// One labeled EEG epoch: channels x samples at a fixed rate.
struct Trial {
  std::string id;
  std::string subject;
  int label = 0;
  Split split = Split::kUnassigned;
  bool rejected = false;
  double sample_rate_hz = 250.0;
  MatX<double> samples;  // channels x length

  Index channels() const { return samples.rows(); }
  Index length() const { return samples.cols(); }
};

struct TrialSet {
  std::vector<Trial> trials;
  std::vector<std::string> channel_names;
  int n_classes = 2;

  Index size() const { return static_cast<Index>(trials.size()); }
};

// ---------------------------------------------------------------------------
// Epoch extraction: a trial exactly time_len long passes through; a longer
// one yields two children, the first time_len samples and the last time_len
// samples (they overlap when the trial is shorter than 2*time_len).
// ---------------------------------------------------------------------------
std::vector<Trial> window_split(const Trial& trial, Index time_len);
TrialSet window_split(const TrialSet& set, Index time_len);

// Drops trials flagged rejected. Per-subject acceptance rates (accepted /
// total) are returned through `rates` when given.
TrialSet filter_rejected(const TrialSet& set,
                         std::map<std::string, double>* rates = nullptr);

// Per-subject, per-class stratified split. Trials carrying a pre-assigned
// split tag keep it; the rest are partitioned so each (subject, class)
// train fraction is within one trial of `ratio`.
std::pair<TrialSet, TrialSet> train_test_split(const TrialSet& set,
                                               double ratio,
                                               std::uint64_t seed);

// ---------------------------------------------------------------------------
// Synthetic motor-imagery stand-in for desk-scale verification. Every
// channel of a trial carries broadband noise plus high-band (>100 Hz) noise;
// the class-specific marker is a fixed-frequency rhythm on one designated
// channel per class.
// ---------------------------------------------------------------------------
struct SynthConfig {
  int n_trials_per_class = 20;
  int n_classes = 2;
  int n_channels = 3;
  int time_len = 750;
  double sample_rate_hz = 250.0;
  double rhythm_hz = 10.0;
  std::vector<int> class_channel;  // class c boosts channel class_channel[c]
  double rhythm_amplitude = 1.0;
  double broadband_std = 0.25;
  double highband_std = 0.25;
  int n_subjects = 1;
  std::uint64_t seed = 1;

  void validate() const;
};

TrialSet synth_generate(const SynthConfig& cfg);

}  // namespace eeginc
