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

#include <limits>
#include <string>
#include <vector>

namespace eeginc {

// Confusion matrix with rows = actual class, columns = predicted class.
using ConfusionMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

inline ConfusionMatrix confusion_from_predictions(
    const std::vector<int>& actual, const std::vector<int>& predicted,
    int n_classes) {
  require(actual.size() == predicted.size(),
          "confusion: actual/predicted size mismatch");
  ConfusionMatrix cm = ConfusionMatrix::Zero(n_classes, n_classes);
  for (size_t i = 0; i < actual.size(); ++i) {
    require(actual[i] >= 0 && actual[i] < n_classes &&
                predicted[i] >= 0 && predicted[i] < n_classes,
            "confusion: class index out of range");
    cm(actual[i], predicted[i]) += 1;
  }
  return cm;
}

constexpr double kUndefinedMetric = std::numeric_limits<double>::quiet_NaN();

double accuracy(const ConfusionMatrix& cm);
// Recall of each actual class (diagonal over row sum); NaN when the class
// is absent from the test set.
std::vector<double> per_class_accuracy(const ConfusionMatrix& cm);

// Chance-corrected agreement. NaN when expected agreement is 1.
double cohen_kappa(const ConfusionMatrix& cm);

struct ClassScores {
  double precision = kUndefinedMetric;
  double recall = kUndefinedMetric;
  double f1 = kUndefinedMetric;
};
ClassScores f1_recall(const ConfusionMatrix& cm, int positive_class);
// Unweighted mean over classes with defined scores.
ClassScores macro_f1_recall(const ConfusionMatrix& cm);

// Trapezoidal area under the ROC from a score-descending sweep, ties
// averaged; equal to the Mann-Whitney pairwise statistic. NaN when only one
// class is present.
double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels, int positive_class = 1);

struct RocPoint {
  double fpr, tpr, threshold;
};
std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& labels,
                                int positive_class = 1);

// Mean and sample (n-1) standard deviation across per-subject accuracies.
std::pair<double, double> cross_subject_stats(const std::vector<double>& values);

// Everything evaluate() derives from one test pass.
struct MetricsReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  std::vector<double> per_class_accuracy;
  double kappa = kUndefinedMetric;
  double macro_f1 = kUndefinedMetric;
  double macro_recall = kUndefinedMetric;
  double binary_f1 = kUndefinedMetric;      // positive class; binary only
  double binary_recall = kUndefinedMetric;  // positive class; binary only
  double auc = kUndefinedMetric;            // binary only
  long long n_samples = 0;
  std::vector<RocPoint> roc;
  // Filled by the benchmark path, not by evaluate(), so metric files stay
  // byte-reproducible.
  double seconds_per_sample = kUndefinedMetric;

  std::string to_json() const;
  std::string confusion_csv() const;
  std::string roc_csv() const;
};

MetricsReport metrics_from_confusion(const ConfusionMatrix& cm);

}  // namespace eeginc
