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

#include "eeginception/model.hpp"
#include "eeginception/train.hpp"
#include "eeginception/trial.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace eeginc {

// Unknown keys are config errors everywhere: a typoed key silently falling
// back to a default is the worst failure mode a config file can have.
inline void reject_unknown_keys(const nlohmann::json& j,
                                const std::set<std::string>& allowed,
                                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

inline nlohmann::json to_json(const ModelConfig& c) {
  nlohmann::json j;
  j["in_channels"] = c.in_channels;
  j["depth"] = c.depth;
  j["kernel_sizes"] = c.kernel_sizes;
  j["n_classes"] = c.n_classes;
  j["time_len"] = c.time_len;
  j["n_inception"] = c.n_inception;
  j["residual_period"] = c.residual_period;
  j["pool_kernel"] = c.pool_kernel;
  j["seed"] = c.seed;
  return j;
}

inline ModelConfig model_config_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j,
                      {"in_channels", "depth", "kernel_sizes", "n_classes",
                       "time_len", "n_inception", "residual_period",
                       "pool_kernel", "seed"},
                      "model config");
  ModelConfig c;
  if (j.contains("in_channels")) c.in_channels = j["in_channels"].get<int>();
  if (j.contains("depth")) c.depth = j["depth"].get<int>();
  if (j.contains("kernel_sizes"))
    c.kernel_sizes = j["kernel_sizes"].get<std::vector<int>>();
  if (j.contains("n_classes")) c.n_classes = j["n_classes"].get<int>();
  if (j.contains("time_len")) c.time_len = j["time_len"].get<int>();
  if (j.contains("n_inception")) c.n_inception = j["n_inception"].get<int>();
  if (j.contains("residual_period"))
    c.residual_period = j["residual_period"].get<int>();
  if (j.contains("pool_kernel")) c.pool_kernel = j["pool_kernel"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  return c;
}

inline nlohmann::json to_json(const TrainConfig& c) {
  nlohmann::json j;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["learning_rate"] = c.adam.learning_rate;
  j["beta1"] = c.adam.beta1;
  j["beta2"] = c.adam.beta2;
  j["epsilon"] = c.adam.epsilon;
  j["adam_eps_inside_sqrt"] = c.adam.eps_inside_sqrt;
  j["seed"] = c.seed;
  j["augment_factor"] = c.augment_factor;
  j["same_class_donors"] = c.augment_same_class_donors;
  j["zero_phase"] = c.augment_zero_phase;
  return j;
}

inline TrainConfig train_config_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j,
                      {"epochs", "batch_size", "learning_rate", "beta1",
                       "beta2", "epsilon", "adam_eps_inside_sqrt", "seed",
                       "augment_factor", "same_class_donors", "zero_phase"},
                      "train config");
  TrainConfig c;
  if (j.contains("epochs")) c.epochs = j["epochs"].get<int>();
  if (j.contains("batch_size")) c.batch_size = j["batch_size"].get<int>();
  if (j.contains("learning_rate"))
    c.adam.learning_rate = j["learning_rate"].get<double>();
  if (j.contains("beta1")) c.adam.beta1 = j["beta1"].get<double>();
  if (j.contains("beta2")) c.adam.beta2 = j["beta2"].get<double>();
  if (j.contains("epsilon")) c.adam.epsilon = j["epsilon"].get<double>();
  if (j.contains("adam_eps_inside_sqrt"))
    c.adam.eps_inside_sqrt = j["adam_eps_inside_sqrt"].get<bool>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("augment_factor"))
    c.augment_factor = j["augment_factor"].get<int>();
  if (j.contains("same_class_donors"))
    c.augment_same_class_donors = j["same_class_donors"].get<bool>();
  if (j.contains("zero_phase"))
    c.augment_zero_phase = j["zero_phase"].get<bool>();
  return c;
}

inline nlohmann::json to_json(const SynthConfig& c) {
  nlohmann::json j;
  j["n_trials_per_class"] = c.n_trials_per_class;
  j["n_classes"] = c.n_classes;
  j["n_channels"] = c.n_channels;
  j["time_len"] = c.time_len;
  j["sample_rate_hz"] = c.sample_rate_hz;
  j["rhythm_hz"] = c.rhythm_hz;
  j["class_channel"] = c.class_channel;
  j["rhythm_amplitude"] = c.rhythm_amplitude;
  j["broadband_std"] = c.broadband_std;
  j["highband_std"] = c.highband_std;
  j["n_subjects"] = c.n_subjects;
  j["seed"] = c.seed;
  return j;
}

inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
  reject_unknown_keys(
      j,
      {"n_trials_per_class", "n_classes", "n_channels", "time_len",
       "sample_rate_hz", "rhythm_hz", "class_channel", "rhythm_amplitude",
       "broadband_std", "highband_std", "n_subjects", "seed"},
      "synth config");
  SynthConfig c;
  if (j.contains("n_trials_per_class"))
    c.n_trials_per_class = j["n_trials_per_class"].get<int>();
  if (j.contains("n_classes")) c.n_classes = j["n_classes"].get<int>();
  if (j.contains("n_channels")) c.n_channels = j["n_channels"].get<int>();
  if (j.contains("time_len")) c.time_len = j["time_len"].get<int>();
  if (j.contains("sample_rate_hz"))
    c.sample_rate_hz = j["sample_rate_hz"].get<double>();
  if (j.contains("rhythm_hz")) c.rhythm_hz = j["rhythm_hz"].get<double>();
  if (j.contains("class_channel"))
    c.class_channel = j["class_channel"].get<std::vector<int>>();
  if (j.contains("rhythm_amplitude"))
    c.rhythm_amplitude = j["rhythm_amplitude"].get<double>();
  if (j.contains("broadband_std"))
    c.broadband_std = j["broadband_std"].get<double>();
  if (j.contains("highband_std"))
    c.highband_std = j["highband_std"].get<double>();
  if (j.contains("n_subjects")) c.n_subjects = j["n_subjects"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  return c;
}

}  // namespace eeginc
