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

#include "eeginception/train.hpp"

#include "eeginception/loss.hpp"
#include "eeginception/model_io.hpp"
#include "eeginception/rng.hpp"
#include "eeginception/threading.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <numeric>
#include <sstream>

namespace eeginc {

std::string TrainHistory::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "epoch,loss,train_accuracy\n";
  for (size_t e = 0; e < epochs.size(); ++e)
    os << (e + 1) << "," << epochs[e].loss << "," << epochs[e].train_accuracy
       << "\n";
  return os.str();
}

Tensor<float> pack_batch(const std::vector<const Trial*>& trials,
                         Index time_len) {
  require(!trials.empty(), "pack_batch: empty batch");
  const Index channels = trials[0]->channels();
  Tensor<float> batch(static_cast<Index>(trials.size()), channels, time_len);
  for (size_t b = 0; b < trials.size(); ++b) {
    const Trial* t = trials[b];
    require(t->channels() == channels, "pack_batch: channel count varies");
    require(t->length() >= time_len,
            "pack_batch: trial '" + t->id + "' shorter than model input");
    // Longer trials would have been window_split upstream; taking the head
    // keeps this function total.
    batch.sample(static_cast<Index>(b)) =
        t->samples.leftCols(time_len).cast<float>();
  }
  return batch;
}

namespace {

std::vector<int> labels_of(const std::vector<const Trial*>& trials) {
  std::vector<int> out;
  out.reserve(trials.size());
  for (const auto* t : trials) out.push_back(t->label);
  return out;
}

long long count_argmax_hits(const MatX<float>& logits,
                            const std::vector<int>& labels) {
  long long hits = 0;
  for (Index b = 0; b < logits.cols(); ++b) {
    Index pred;
    logits.col(b).maxCoeff(&pred);
    if (static_cast<int>(pred) == labels[static_cast<size_t>(b)]) ++hits;
  }
  return hits;
}

}  // namespace

TrainHistory train(EegInception<float>& model, const TrialSet& trainset,
                   const TrainConfig& cfg) {
  cfg.validate();
  require(trainset.size() > 0, "train: empty training set");
  const ModelConfig& mcfg = model.config();

  TrialSet working = window_split(trainset, mcfg.time_len);
  if (cfg.augment_factor > 1) {
    AugmentOptions opts;
    opts.factor = cfg.augment_factor;
    opts.seed = mix_seed(cfg.seed, 0xa46);
    opts.same_class_donors = cfg.augment_same_class_donors;
    opts.zero_phase = cfg.augment_zero_phase;
    working = augment(working, opts).set;
  }

  const size_t n = working.trials.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});

  AdamOptimizer<float> opt(cfg.adam);
  auto params = model.params();

  TrainHistory history;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng shuffle_rng(mix_seed(cfg.seed, 0x5e0000 + epoch));
    shuffle_rng.shuffle(order.begin(), order.end());

    double loss_sum = 0.0;
    long long hits = 0;
    for (size_t start = 0; start < n; start += cfg.batch_size) {
      const size_t stop = std::min(n, start + cfg.batch_size);
      std::vector<const Trial*> batch_trials;
      for (size_t i = start; i < stop; ++i)
        batch_trials.push_back(&working.trials[order[i]]);
      Tensor<float> batch = pack_batch(batch_trials, mcfg.time_len);
      const std::vector<int> labels = labels_of(batch_trials);

      MatX<float> logits = model.forward(batch, Mode::kTrain);
      LossResult<float> loss = softmax_cross_entropy(logits, labels);
      if (!std::isfinite(loss.loss))
        throw NumericError("train: non-finite loss at epoch " +
                           std::to_string(epoch + 1) + ", batch starting at " +
                           std::to_string(start));
      loss_sum += loss.loss * static_cast<double>(labels.size());
      hits += count_argmax_hits(logits, labels);

      model.zero_grad();
      model.backward(loss.grad_logits);
      opt.step(params);
    }
    history.epochs.push_back(
        {loss_sum / static_cast<double>(n),
         static_cast<double>(hits) / static_cast<double>(n)});
  }
  return history;
}

MetricsReport evaluate(EegInception<float>& model, const TrialSet& testset,
                       int positive_class) {
  require(testset.size() > 0, "evaluate: empty test set");
  const ModelConfig& mcfg = model.config();
  TrialSet working = window_split(testset, mcfg.time_len);

  // Chunks evaluate independently into per-trial slots, so the reduction
  // order is fixed and a parallel run matches a serial one exactly. Each
  // worker chunk uses its own model copy (forward passes cache state).
  const Index n = static_cast<Index>(working.trials.size());
  constexpr Index kChunk = 32;
  const Index n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<int> actual(static_cast<size_t>(n));
  std::vector<int> predicted(static_cast<size_t>(n));
  std::vector<double> pos_scores(static_cast<size_t>(n));
  const bool serial = thread_count() <= 1;

  parallel_for(n_chunks, [&](Index c) {
    const Index start = c * kChunk;
    const Index stop = std::min(n, start + kChunk);
    std::vector<const Trial*> chunk;
    for (Index i = start; i < stop; ++i)
      chunk.push_back(&working.trials[static_cast<size_t>(i)]);
    EegInception<float> local_copy;
    EegInception<float>* net = &model;
    if (!serial) {
      local_copy = model;
      net = &local_copy;
    }
    Tensor<float> batch = pack_batch(chunk, mcfg.time_len);
    MatX<float> logits = net->forward(batch, Mode::kEval);
    for (Index b = 0; b < logits.cols(); ++b) {
      Index pred;
      logits.col(b).maxCoeff(&pred);
      predicted[static_cast<size_t>(start + b)] = static_cast<int>(pred);
      actual[static_cast<size_t>(start + b)] =
          chunk[static_cast<size_t>(b)]->label;
      if (mcfg.n_classes == 2) {
        // softmax probability of the positive class
        const ArrX<float> col = logits.col(b).array();
        const float mx = col.maxCoeff();
        const ArrX<float> ex = (col - mx).exp();
        pos_scores[static_cast<size_t>(start + b)] =
            static_cast<double>(ex(positive_class) / ex.sum());
      }
    }
  });

  MetricsReport report = metrics_from_confusion(
      confusion_from_predictions(actual, predicted, mcfg.n_classes));
  if (mcfg.n_classes == 2) {
    report.auc = roc_auc(pos_scores, actual, positive_class);
    report.roc = roc_curve(pos_scores, actual, positive_class);
    const ClassScores pos = f1_recall(report.confusion, positive_class);
    report.binary_f1 = pos.f1;
    report.binary_recall = pos.recall;
  }
  return report;
}

double time_inference(EegInception<float>& model, int n_samples,
                      int warmup_runs) {
  require(n_samples >= 1, "time_inference: n_samples >= 1");
  const ModelConfig& cfg = model.config();
  Rng rng(7);
  Tensor<float> sample(1, cfg.in_channels, cfg.time_len);
  for (Index i = 0; i < sample.m.size(); ++i)
    sample.m.data()[i] = static_cast<float>(rng.normal());

  for (int i = 0; i < warmup_runs; ++i) model.forward(sample, Mode::kEval);

  std::vector<double> times;
  times.reserve(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    MatX<float> logits = model.forward(sample, Mode::kEval);
    const auto t1 = std::chrono::steady_clock::now();
    // fold the result into the timing vector so the call cannot be elided
    volatile float sink = logits(0, 0);
    (void)sink;
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  const size_t mid = times.size() / 2;
  return times.size() % 2 == 1 ? times[mid]
                               : 0.5 * (times[mid - 1] + times[mid]);
}

std::vector<AblateRow> ablate(const std::vector<int>& depths,
                              const ModelConfig& base, const TrialSet& train_set,
                              const TrialSet& test_set, const TrainConfig& tcfg,
                              const std::string& model_out_dir) {
  std::vector<AblateRow> rows;
  for (int depth : depths) {
    AblateRow row;
    row.depth = depth;
    try {
      ModelConfig cfg = base;
      cfg.depth = depth;
      const long long expected = count_params(cfg);
      EegInception<float> model(cfg);
      if (model.n_params() != expected)
        throw NumericError("ablate: materialized parameter count " +
                           std::to_string(model.n_params()) +
                           " != closed form " + std::to_string(expected));
      row.params = expected;

      const auto t0 = std::chrono::steady_clock::now();
      train(model, train_set, tcfg);
      row.train_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      row.test_accuracy = evaluate(model, test_set).accuracy;

      const std::string model_path =
          (model_out_dir.empty()
               ? std::filesystem::temp_directory_path().string()
               : model_out_dir) +
          "/model_depth" + std::to_string(depth) + ".bin";
      save_model(model, model_path);
      row.model_file_bytes =
          static_cast<long long>(std::filesystem::file_size(model_path));
      if (model_out_dir.empty()) std::filesystem::remove(model_path);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string ablation_csv(const std::vector<AblateRow>& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "depth,params,model_file_bytes,train_seconds,test_accuracy,error\n";
  for (const auto& r : rows)
    os << r.depth << "," << r.params << "," << r.model_file_bytes << ","
       << r.train_seconds << "," << r.test_accuracy << "," << r.error << "\n";
  return os.str();
}

LosoResult loso_evaluate(const TrialSet& all, const ModelConfig& mcfg,
                         const TrainConfig& tcfg, double split_ratio,
                         std::uint64_t split_seed) {
  std::vector<std::string> subjects;
  for (const auto& t : all.trials)
    if (std::find(subjects.begin(), subjects.end(), t.subject) ==
        subjects.end())
      subjects.push_back(t.subject);
  require(subjects.size() >= 2, "loso: need at least 2 subjects");

  LosoResult result;
  ConfusionMatrix pooled = ConfusionMatrix::Zero(mcfg.n_classes, mcfg.n_classes);

  for (const auto& held_out : subjects) {
    TrialSet held, rest;
    held.channel_names = rest.channel_names = all.channel_names;
    held.n_classes = rest.n_classes = all.n_classes;
    for (const auto& t : all.trials)
      (t.subject == held_out ? held : rest).trials.push_back(t);
    if (held.trials.empty()) {
      result.skipped.push_back(held_out);
      continue;
    }

    // Only the remaining subjects' training partition is used for fitting.
    auto [rest_train, rest_test] =
        train_test_split(rest, split_ratio, split_seed);
    (void)rest_test;

    ModelConfig fold_mcfg = mcfg;
    fold_mcfg.seed = mix_seed(mcfg.seed, std::hash<std::string>{}(held_out));
    TrainConfig fold_tcfg = tcfg;
    fold_tcfg.seed = mix_seed(tcfg.seed, std::hash<std::string>{}(held_out));

    EegInception<float> model(fold_mcfg);
    train(model, rest_train, fold_tcfg);
    MetricsReport report = evaluate(model, held);
    pooled += report.confusion;
    result.per_subject.emplace(held_out, std::move(report));
  }

  result.pooled = metrics_from_confusion(pooled);
  return result;
}

}  // namespace eeginc
