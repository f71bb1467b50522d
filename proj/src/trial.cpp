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

#include "eeginception/trial.hpp"

#include "eeginception/butterworth.hpp"
#include "eeginception/rng.hpp"

#include <algorithm>
#include <cmath>

namespace eeginc {

std::string split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kTest: return "test";
    default: return "unassigned";
  }
}

Split split_from_name(const std::string& name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  if (name == "unassigned") return Split::kUnassigned;
  throw DataError("unknown split tag '" + name + "'");
}

std::vector<Trial> window_split(const Trial& trial, Index time_len) {
  const Index len = trial.length();
  if (len < time_len)
    throw DataError("window_split: trial " + trial.id + " has " +
                    std::to_string(len) + " samples, needs >= " +
                    std::to_string(time_len));
  if (len == time_len) return {trial};
  Trial head = trial;
  head.id = trial.id + "-a";
  head.samples = trial.samples.leftCols(time_len);
  Trial tail = trial;
  tail.id = trial.id + "-b";
  tail.samples = trial.samples.rightCols(time_len);
  return {head, tail};
}

TrialSet window_split(const TrialSet& set, Index time_len) {
  TrialSet out;
  out.channel_names = set.channel_names;
  out.n_classes = set.n_classes;
  for (const auto& t : set.trials) {
    auto children = window_split(t, time_len);
    out.trials.insert(out.trials.end(), children.begin(), children.end());
  }
  return out;
}

TrialSet filter_rejected(const TrialSet& set,
                         std::map<std::string, double>* rates) {
  TrialSet out;
  out.channel_names = set.channel_names;
  out.n_classes = set.n_classes;
  std::map<std::string, std::pair<Index, Index>> counts;  // kept, total
  for (const auto& t : set.trials) {
    auto& c = counts[t.subject];
    c.second += 1;
    if (!t.rejected) {
      c.first += 1;
      out.trials.push_back(t);
    }
  }
  if (rates) {
    rates->clear();
    for (const auto& [subject, c] : counts)
      (*rates)[subject] =
          c.second == 0 ? 0.0
                        : static_cast<double>(c.first) /
                              static_cast<double>(c.second);
  }
  return out;
}

std::pair<TrialSet, TrialSet> train_test_split(const TrialSet& set,
                                               double ratio,
                                               std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ConfigError("train_test_split: ratio must be in (0,1)");

  // Group untagged trials by (subject, class); tagged trials keep their tag.
  std::map<std::string, std::map<int, std::vector<size_t>>> untagged;
  std::map<std::string, std::map<int, Index>> total, pretrain;
  std::map<std::string, Index> subject_total, subject_pretrain;
  for (size_t i = 0; i < set.trials.size(); ++i) {
    const auto& t = set.trials[i];
    total[t.subject][t.label] += 1;
    subject_total[t.subject] += 1;
    if (t.split == Split::kTrain) {
      pretrain[t.subject][t.label] += 1;
      subject_pretrain[t.subject] += 1;
    }
    if (t.split == Split::kUnassigned) untagged[t.subject][t.label].push_back(i);
  }
  for (const auto& [subject, by_class] : total)
    for (const auto& [cls, n] : by_class)
      if (n < 2)
        throw DataError("train_test_split: subject '" + subject + "' class " +
                        std::to_string(cls) + " has fewer than 2 trials");

  std::vector<Split> assignment(set.trials.size());
  for (size_t i = 0; i < set.trials.size(); ++i)
    assignment[i] = set.trials[i].split;

  // Largest-remainder apportionment per subject: every class lands within
  // one trial of the ratio and the subject total matches round(ratio * n).
  for (auto& [subject, by_class] : untagged) {
    std::vector<std::pair<double, int>> remainders;  // (-fraction, class)
    std::map<int, Index> want;
    Index assigned = 0;
    for (const auto& [cls, n] : total[subject]) {
      const double exact = ratio * static_cast<double>(n);
      want[cls] = static_cast<Index>(std::floor(exact));
      assigned += want[cls];
      remainders.push_back({-(exact - std::floor(exact)), cls});
    }
    Index extras = static_cast<Index>(std::llround(
                       ratio * static_cast<double>(subject_total[subject]))) -
                   assigned;
    std::sort(remainders.begin(), remainders.end());
    for (const auto& [neg_frac, cls] : remainders) {
      if (extras <= 0) break;
      want[cls] += 1;
      --extras;
    }
    for (auto& [cls, idx] : by_class) {
      Rng rng(mix_seed(seed, std::hash<std::string>{}(subject) ^
                                 static_cast<std::uint64_t>(cls)));
      rng.shuffle(idx.begin(), idx.end());
      const Index still_needed = std::clamp<Index>(
          want[cls] - pretrain[subject][cls], 0, static_cast<Index>(idx.size()));
      for (size_t j = 0; j < idx.size(); ++j)
        assignment[idx[j]] = j < static_cast<size_t>(still_needed)
                                 ? Split::kTrain
                                 : Split::kTest;
    }
  }

  TrialSet train, test;
  train.channel_names = test.channel_names = set.channel_names;
  train.n_classes = test.n_classes = set.n_classes;
  for (size_t i = 0; i < set.trials.size(); ++i) {
    Trial t = set.trials[i];
    t.split = assignment[i];
    (t.split == Split::kTrain ? train : test).trials.push_back(std::move(t));
  }
  return {std::move(train), std::move(test)};
}

void SynthConfig::validate() const {
  if (n_trials_per_class < 1) throw ConfigError("synth: n_trials_per_class < 1");
  if (n_classes < 2) throw ConfigError("synth: n_classes < 2");
  if (n_channels < 1) throw ConfigError("synth: n_channels < 1");
  if (time_len < 2) throw ConfigError("synth: time_len < 2");
  if (rhythm_amplitude < 0 || broadband_std < 0 || highband_std < 0)
    throw ConfigError("synth: amplitudes must be >= 0");
  if (n_subjects < 1) throw ConfigError("synth: n_subjects < 1");
  std::vector<int> map = class_channel;
  if (map.empty())
    for (int c = 0; c < n_classes; ++c) map.push_back(c % n_channels);
  if (static_cast<int>(map.size()) != n_classes)
    throw ConfigError("synth: class_channel size != n_classes");
  std::vector<int> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("synth: classes must map to distinct channels");
  for (int ch : map)
    if (ch < 0 || ch >= n_channels)
      throw ConfigError("synth: class channel out of range");
}

TrialSet synth_generate(const SynthConfig& cfg) {
  cfg.validate();
  std::vector<int> map = cfg.class_channel;
  if (map.empty())
    for (int c = 0; c < cfg.n_classes; ++c) map.push_back(c % cfg.n_channels);

  // High-band shaping filter; its broadband power gain normalizes the
  // high-band component back to the requested std (flat scaling, so the
  // spectrum shape is untouched).
  const SosFilter hp =
      design_butterworth_highpass(8, 100.0, cfg.sample_rate_hz);
  double power_gain = 0.0;
  const int grid = 512;
  for (int i = 1; i <= grid; ++i) {
    const double f = (cfg.sample_rate_hz / 2.0) * i / grid;
    const double mag = std::abs(frequency_response(hp, f));
    power_gain += mag * mag / grid;
  }
  const double hb_scale = cfg.highband_std / std::sqrt(power_gain);

  TrialSet out;
  out.n_classes = cfg.n_classes;
  for (int c = 0; c < cfg.n_channels; ++c)
    out.channel_names.push_back("ch" + std::to_string(c));

  const double two_pi = 2.0 * 3.14159265358979323846;
  Index trial_index = 0;
  for (int s = 0; s < cfg.n_subjects; ++s) {
    for (int c = 0; c < cfg.n_classes; ++c) {
      for (int i = 0; i < cfg.n_trials_per_class; ++i, ++trial_index) {
        Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(trial_index)));
        Trial t;
        t.subject = "S" + std::to_string(s + 1);
        t.id = t.subject + "-c" + std::to_string(c) + "-" + std::to_string(i);
        t.label = c;
        t.sample_rate_hz = cfg.sample_rate_hz;
        t.samples.resize(cfg.n_channels, cfg.time_len);
        for (Index ch = 0; ch < cfg.n_channels; ++ch) {
          VecX<double> white(cfg.time_len);
          for (Index n = 0; n < cfg.time_len; ++n)
            white(n) = rng.normal();
          VecX<double> high = sos_filter(hp, white) * hb_scale;
          for (Index n = 0; n < cfg.time_len; ++n)
            t.samples(ch, n) =
                cfg.broadband_std * rng.normal() + high(n);
        }
        const double phase = rng.uniform(0.0, two_pi);
        const int marker = map[c];
        for (Index n = 0; n < cfg.time_len; ++n)
          t.samples(marker, n) +=
              cfg.rhythm_amplitude *
              std::sin(two_pi * cfg.rhythm_hz * n / cfg.sample_rate_hz +
                       phase);
        out.trials.push_back(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace eeginc
