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

#include "eeginception/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace eeginc {

namespace {
bool defined(double v) { return !std::isnan(v); }
}

double accuracy(const ConfusionMatrix& cm) {
  const long long total = cm.sum();
  require(total > 0, "accuracy: empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

std::vector<double> per_class_accuracy(const ConfusionMatrix& cm) {
  std::vector<double> out;
  for (Index c = 0; c < cm.rows(); ++c) {
    const long long row = cm.row(c).sum();
    out.push_back(row == 0 ? kUndefinedMetric
                           : static_cast<double>(cm(c, c)) /
                                 static_cast<double>(row));
  }
  return out;
}

double cohen_kappa(const ConfusionMatrix& cm) {
  const double total = static_cast<double>(cm.sum());
  require(total > 0, "kappa: empty confusion matrix");
  const double po = static_cast<double>(cm.trace()) / total;
  double pe = 0.0;
  for (Index c = 0; c < cm.rows(); ++c) {
    const double row = static_cast<double>(cm.row(c).sum());
    const double col = static_cast<double>(cm.col(c).sum());
    pe += (row / total) * (col / total);
  }
  if (pe >= 1.0) return kUndefinedMetric;
  return (po - pe) / (1.0 - pe);
}

ClassScores f1_recall(const ConfusionMatrix& cm, int positive_class) {
  ClassScores s;
  const Index c = positive_class;
  require(c >= 0 && c < cm.rows(), "f1: class index out of range");
  const long long tp = cm(c, c);
  const long long actual = cm.row(c).sum();
  const long long predicted = cm.col(c).sum();
  if (predicted > 0)
    s.precision = static_cast<double>(tp) / static_cast<double>(predicted);
  if (actual > 0)
    s.recall = static_cast<double>(tp) / static_cast<double>(actual);
  if (defined(s.precision) && defined(s.recall) && s.precision + s.recall > 0)
    s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

ClassScores macro_f1_recall(const ConfusionMatrix& cm) {
  ClassScores macro;
  double p = 0, r = 0, f = 0;
  int np = 0, nr = 0, nf = 0;
  for (Index c = 0; c < cm.rows(); ++c) {
    const ClassScores s = f1_recall(cm, static_cast<int>(c));
    if (defined(s.precision)) { p += s.precision; ++np; }
    if (defined(s.recall)) { r += s.recall; ++nr; }
    if (defined(s.f1)) { f += s.f1; ++nf; }
  }
  if (np > 0) macro.precision = p / np;
  if (nr > 0) macro.recall = r / nr;
  if (nf > 0) macro.f1 = f / nf;
  return macro;
}

double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels, int positive_class) {
  require(scores.size() == labels.size(), "auc: scores/labels size mismatch");
  // Rank formulation with midranks for ties.
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  double rank_sum_pos = 0.0;
  long long n_pos = 0, n_neg = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (size_t k = i; k < j; ++k) {
      if (labels[order[k]] == positive_class) {
        rank_sum_pos += midrank;
        ++n_pos;
      } else {
        ++n_neg;
      }
    }
    i = j;
  }
  if (n_pos == 0 || n_neg == 0) return kUndefinedMetric;
  const double u = rank_sum_pos - static_cast<double>(n_pos) *
                                      (static_cast<double>(n_pos) + 1.0) / 2.0;
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<RocPoint> roc_curve(const std::vector<double>& scores,
                                const std::vector<int>& labels,
                                int positive_class) {
  require(scores.size() == labels.size(), "roc: scores/labels size mismatch");
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  long long n_pos = 0, n_neg = 0;
  for (int l : labels) (l == positive_class ? n_pos : n_neg) += 1;

  std::vector<RocPoint> curve;
  curve.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  long long tp = 0, fp = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    const double thr = scores[order[i]];
    // Tied scores move together: one curve vertex per distinct threshold.
    while (j < order.size() && scores[order[j]] == thr) {
      if (labels[order[j]] == positive_class) ++tp; else ++fp;
      ++j;
    }
    curve.push_back({n_neg ? static_cast<double>(fp) / n_neg : 0.0,
                     n_pos ? static_cast<double>(tp) / n_pos : 0.0, thr});
    i = j;
  }
  return curve;
}

std::pair<double, double> cross_subject_stats(
    const std::vector<double>& values) {
  require(!values.empty(), "stats: empty list");
  const double n = static_cast<double>(values.size());
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return {mean, kUndefinedMetric};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

MetricsReport metrics_from_confusion(const ConfusionMatrix& cm) {
  MetricsReport r;
  r.confusion = cm;
  r.n_samples = cm.sum();
  r.accuracy = accuracy(cm);
  r.per_class_accuracy = per_class_accuracy(cm);
  r.kappa = cohen_kappa(cm);
  const ClassScores macro = macro_f1_recall(cm);
  r.macro_f1 = macro.f1;
  r.macro_recall = macro.recall;
  if (cm.rows() == 2) {
    const ClassScores pos = f1_recall(cm, 1);
    r.binary_f1 = pos.f1;
    r.binary_recall = pos.recall;
  }
  return r;
}

namespace {
nlohmann::json json_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}
}  // namespace

std::string MetricsReport::to_json() const {
  nlohmann::json j;
  j["n_samples"] = n_samples;
  j["accuracy"] = accuracy;
  nlohmann::json pca = nlohmann::json::array();
  for (double v : per_class_accuracy) pca.push_back(json_or_null(v));
  j["per_class_accuracy"] = pca;
  j["kappa"] = json_or_null(kappa);
  j["macro_f1"] = json_or_null(macro_f1);
  j["macro_recall"] = json_or_null(macro_recall);
  j["binary_f1"] = json_or_null(binary_f1);
  j["binary_recall"] = json_or_null(binary_recall);
  j["auc"] = json_or_null(auc);
  nlohmann::json rows = nlohmann::json::array();
  for (Index a = 0; a < confusion.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (Index p = 0; p < confusion.cols(); ++p) row.push_back(confusion(a, p));
    rows.push_back(row);
  }
  j["confusion"] = rows;
  if (!std::isnan(seconds_per_sample))
    j["seconds_per_sample"] = seconds_per_sample;
  return j.dump(2) + "\n";
}

std::string MetricsReport::confusion_csv() const {
  std::ostringstream os;
  os << "actual\\predicted";
  for (Index p = 0; p < confusion.cols(); ++p) os << ",class" << p;
  os << "\n";
  for (Index a = 0; a < confusion.rows(); ++a) {
    os << "class" << a;
    for (Index p = 0; p < confusion.cols(); ++p) os << "," << confusion(a, p);
    os << "\n";
  }
  return os.str();
}

std::string MetricsReport::roc_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "fpr,tpr,threshold\n";
  for (const auto& p : roc)
    os << p.fpr << "," << p.tpr << "," << p.threshold << "\n";
  return os.str();
}

}  // namespace eeginc
