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

#include "eeginception/augment.hpp"

#include "eeginception/rng.hpp"
#include "eeginception/threading.hpp"

#include <map>

namespace eeginc {

NoiseCandidate extract_noise(const Trial& trial, const SosFilter& filter,
                             bool zero_phase) {
  if (trial.sample_rate_hz != filter.sample_rate_hz)
    throw DataError("extract_noise: trial rate " +
                    std::to_string(trial.sample_rate_hz) +
                    " Hz does not match filter design rate " +
                    std::to_string(filter.sample_rate_hz) + " Hz");
  NoiseCandidate cand;
  cand.source_id = trial.id;
  cand.noise = sos_filter_channels(filter, trial.samples, zero_phase);
  return cand;
}

AugmentResult augment(const TrialSet& train, const AugmentOptions& options) {
  const Index n = train.size();
  if (options.factor < 1) throw ConfigError("augment: factor must be >= 1");
  if (n < 2) throw DataError("augment: need at least 2 trials");

  AugmentResult result;
  result.set.channel_names = train.channel_names;
  result.set.n_classes = train.n_classes;
  result.set.trials = train.trials;
  if (options.factor == 1) return result;

  // Noise candidates once per source trial, extracted in parallel (each
  // writes its own slot only). Filters are designed up front, one per sample
  // rate encountered (normally just one).
  std::map<double, SosFilter> filters;
  for (const auto& t : train.trials) {
    if (!filters.count(t.sample_rate_hz))
      filters.emplace(t.sample_rate_hz,
                      design_butterworth_highpass(options.filter_order,
                                                  options.cutoff_hz,
                                                  t.sample_rate_hz));
  }
  std::vector<NoiseCandidate> noise(static_cast<size_t>(n));
  parallel_for(n, [&](Index i) {
    const Trial& t = train.trials[static_cast<size_t>(i)];
    noise[static_cast<size_t>(i)] =
        extract_noise(t, filters.at(t.sample_rate_hz), options.zero_phase);
  });

  // Donor pools keyed by subject (and class when restricted).
  std::map<std::pair<std::string, int>, std::vector<Index>> pools;
  for (Index i = 0; i < n; ++i) {
    const Trial& t = train.trials[static_cast<size_t>(i)];
    const int cls = options.same_class_donors ? t.label : -1;
    pools[{t.subject, cls}].push_back(i);
  }

  // Every trial needs a donor other than itself; check the pools up front so
  // the parallel loop below cannot fail.
  for (const auto& [key, pool] : pools) {
    if (pool.size() < 2)
      throw DataError("augment: subject '" + key.first +
                      "' has no eligible donors (pool of size " +
                      std::to_string(pool.size()) + ")");
  }
  for (Index i = 0; i < n; ++i) {
    const Trial& a = train.trials[static_cast<size_t>(i)];
    const Trial& b = train.trials[0];
    if (a.channels() != b.channels() || a.length() != b.length())
      throw DataError("augment: trial '" + a.id +
                      "' shape differs from trial '" + b.id + "'");
  }

  const Index n_synth = static_cast<Index>(options.factor - 1) * n;
  result.set.trials.resize(static_cast<size_t>(n + n_synth));
  result.provenance.resize(static_cast<size_t>(n_synth));
  parallel_for(n_synth, [&](Index s) {
    const Index i = s % n;
    const int copy = 1 + static_cast<int>(s / n);
    const Trial& src = train.trials[static_cast<size_t>(i)];
    const int cls = options.same_class_donors ? src.label : -1;
    const auto& pool = pools.at({src.subject, cls});
    Rng rng(mix_seed(options.seed, static_cast<std::uint64_t>(s)));
    Index k = i;
    while (k == i)
      k = pool[static_cast<size_t>(rng.uniform_index(pool.size()))];

    Trial aug = src;
    aug.id = src.id + "-aug" + std::to_string(copy);
    aug.samples = noise_swap(src.samples, noise[static_cast<size_t>(i)].noise,
                             noise[static_cast<size_t>(k)].noise);
    result.set.trials[static_cast<size_t>(n + s)] = std::move(aug);
    result.provenance[static_cast<size_t>(s)] = {
        result.set.trials[static_cast<size_t>(n + s)].id, i, k};
  });
  return result;
}

}  // namespace eeginc
