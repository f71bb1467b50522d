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

#include "eeginception/augment.hpp"
#include "eeginception/metrics.hpp"
#include "eeginception/model.hpp"
#include "eeginception/trial.hpp"

#include <map>
#include <string>
#include <vector>

namespace eeginc {

struct TrainConfig {
  int epochs = 100;       // one epoch = one full pass over the training set
  int batch_size = 32;
  AdamConfig adam;        // learning rate 0.005 by default
  std::uint64_t seed = 1;
  int augment_factor = 1;  // 1 = off; 3 (binary) / 6 (four-class) typical
  bool augment_same_class_donors = false;
  bool augment_zero_phase = false;

  void validate() const {
    if (epochs < 1) throw ConfigError("train config: epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("train config: batch_size >= 1");
    if (augment_factor < 1) throw ConfigError("train config: augment_factor >= 1");
  }
};

struct EpochStats {
  double loss = 0.0;
  double train_accuracy = 0.0;
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
  std::string to_csv() const;
};

// Packs trials into a batch tensor (float), windowing each trial to the
// model's time length first.
Tensor<float> pack_batch(const std::vector<const Trial*>& trials,
                         Index time_len);

// Minibatch training: seeded shuffle each epoch, forward in train mode,
// softmax cross-entropy, backprop, one Adam step per batch (final partial
// batch included). Augmentation, when requested, is applied once up front
// to the training set only.
TrainHistory train(EegInception<float>& model, const TrialSet& trainset,
                   const TrainConfig& cfg);

// Eval-mode forward over the whole set; argmax predictions; full metric
// suite. Binary AUC uses the softmax probability of `positive_class`.
MetricsReport evaluate(EegInception<float>& model, const TrialSet& testset,
                       int positive_class = 1);

// Median eval-mode single-sample forward time over n_samples runs, after
// warmup_runs discarded passes.
double time_inference(EegInception<float>& model, int n_samples,
                      int warmup_runs = 3);

struct AblateRow {
  int depth = 0;
  long long params = 0;
  long long model_file_bytes = 0;
  double train_seconds = 0.0;
  double test_accuracy = 0.0;
  std::string error;  // empty on success
};

// Depth sweep: per depth, parameter count (checked against the closed
// form), serialized model size, training wall-clock and test accuracy.
// Per-depth failures are recorded and the sweep continues.
std::vector<AblateRow> ablate(const std::vector<int>& depths,
                              const ModelConfig& base, const TrialSet& train_set,
                              const TrialSet& test_set, const TrainConfig& tcfg,
                              const std::string& model_out_dir = "");

std::string ablation_csv(const std::vector<AblateRow>& rows);

struct LosoResult {
  std::map<std::string, MetricsReport> per_subject;
  MetricsReport pooled;
  std::vector<std::string> skipped;  // subjects without trials
};

// Leave-one-subject-out: train on the pooled other subjects' training
// trials (augmented per config), evaluate on the held-out subject's full
// data. Pooled confusion is the elementwise sum over folds. Fold seeds
// derive from (cfg.seed, subject).
LosoResult loso_evaluate(const TrialSet& all, const ModelConfig& mcfg,
                         const TrainConfig& tcfg, double split_ratio = 0.75,
                         std::uint64_t split_seed = 1);

}  // namespace eeginc
