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
//
// Acceptance suite: one pass/fail line per criterion. Criteria 1 and 9 drive
// the CLI binary (path given as argv[1]); everything else goes through the
// library directly.

#include "eeginception/augment.hpp"
#include "eeginception/butterworth.hpp"
#include "eeginception/grad_check.hpp"
#include "eeginception/loss.hpp"
#include "eeginception/model_io.hpp"
#include "eeginception/train.hpp"
#include "../tests/test_util.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

using namespace eeginc;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok,
            const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": "
            << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  CmdResult r;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool files_identical(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::string ca((std::istreambuf_iterator<char>(fa)), {});
  std::string cb((std::istreambuf_iterator<char>(fb)), {});
  return !ca.empty() && ca == cb;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ModelConfig binary_config(int depth) {
  ModelConfig cfg;
  cfg.in_channels = 3;
  cfg.depth = depth;
  cfg.kernel_sizes = {25, 75, 125};
  cfg.n_classes = 2;
  cfg.time_len = 750;
  return cfg;
}

// --------------------------------------------------------------------------
// 1. Parameter oracle through the CLI.
// --------------------------------------------------------------------------
void criterion_1(const std::string& cli) {
  const std::pair<int, long long> table[] = {
      {6, 51386},   {12, 204002},  {16, 361986},
      {24, 812930}, {32, 1443842}, {64, 5767170}};
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  for (const auto& [depth, expected] : table) {
    std::ostringstream cmd;
    cmd << cli << " params --in-channels 3 --depth " << depth
        << " --kernels 25,75,125 --classes 2 --time-len 750";
    CmdResult r = run_cmd(cmd.str());
    long long got = -1;
    try {
      got = std::stoll(r.out);
    } catch (...) {
    }
    if (r.code != 0 || got != expected) {
      ok = false;
      detail = "depth " + std::to_string(depth) + " gave '" + r.out + "'";
      break;
    }
  }
  const double dt = seconds_since(t0);
  if (ok && dt >= 1.0) {
    ok = false;
    detail = "took " + std::to_string(dt) + " s, budget 1 s";
  }
  if (ok)
    detail = "all six depths exact, " + std::to_string(dt) + " s";
  report(1, "Table 2 binary parameter counts via `params`", ok, detail);
}

// --------------------------------------------------------------------------
// 2. Architecture oracle: per-block totals and activation shapes.
// --------------------------------------------------------------------------
void criterion_2() {
  EegInception<float> model(binary_config(12));
  auto rows = model.block_param_counts();
  const long long expected[] = {32628, 33708, 33708, 288, 33708,
                                33708, 33708, 2448, 98};
  bool ok = rows.size() == 9;
  std::string detail;
  for (size_t i = 0; ok && i < rows.size(); ++i) {
    if (rows[i].second != expected[i]) {
      ok = false;
      detail = rows[i].first + " has " + std::to_string(rows[i].second) +
               " params, expected " + std::to_string(expected[i]);
    }
  }
  if (ok) {
    Tensor<float> x(1, 3, 750);
    Rng rng(5);
    for (Index i = 0; i < x.m.size(); ++i)
      x.m.data()[i] = static_cast<float>(rng.normal());
    Tensor<float> act = x;
    for (auto& mod : model.modules()) {
      act = mod.forward(act, Mode::kEval);
      if (act.channels != 48 || act.time != 750) {
        ok = false;
        detail = "activation shape [" + std::to_string(act.channels) + "," +
                 std::to_string(act.time) + "]";
        break;
      }
    }
  }
  if (ok) detail = "blocks {32628, 5x33708, 288, 2448, 98}; activations [48,750]";
  report(2, "Table 3 per-block totals and activation shapes", ok, detail);
}

// --------------------------------------------------------------------------
// 3. Gradient suite.
// --------------------------------------------------------------------------
void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  double worst = 0.0;

  auto flatten = [](const MatX<double>& m) {
    return VecX<double>(Eigen::Map<const VecX<double>>(m.data(), m.size()));
  };

  // Per-layer checks against a fixed-weight scalarization of the output.
  auto check_layer = [&](const std::string& label, auto&& forward,
                         auto&& backward, MatX<double>& target,
                         double tolerance) {
    if (!ok) return;
    const VecX<double> x0 = flatten(target);
    auto fn = [&](const VecX<double>& v) {
      Eigen::Map<VecX<double>>(target.data(), target.size()) = v;
      return forward();
    };
    auto grad = [&](const VecX<double>& v) {
      Eigen::Map<VecX<double>>(target.data(), target.size()) = v;
      forward();
      return backward();
    };
    auto rep = grad_check(fn, grad, x0, 1e-5, 50, 17);
    Eigen::Map<VecX<double>>(target.data(), target.size()) = x0;
    worst = std::max(worst, rep.max_rel_error);
    if (rep.max_rel_error > tolerance) {
      ok = false;
      detail = label + " error " + std::to_string(rep.max_rel_error);
    }
  };

  Rng rng(3);
  {  // conv1d, K=25
    Conv1d<double> conv(3, 4, 25, rng);
    Tensor<double> x(2, 3, 40);
    for (Index i = 0; i < x.m.size(); ++i) x.m.data()[i] = rng.normal();
    MatX<double> r(4, 80);
    for (Index i = 0; i < r.size(); ++i) r.data()[i] = rng.uniform(-1, 1);
    auto fwd = [&]() {
      return (conv.forward(x).m.array() * r.array()).sum();
    };
    check_layer(
        "conv1d weights", fwd,
        [&]() {
          conv.zero_grad();
          Tensor<double> dy(2, 4, 40);
          dy.m = r;
          conv.backward(dy);
          return flatten(*conv.params("c")[0].grad);
        },
        conv.weight(), 1e-4);
    check_layer(
        "conv1d input", fwd,
        [&]() {
          conv.zero_grad();
          Tensor<double> dy(2, 4, 40);
          dy.m = r;
          return flatten(conv.backward(dy).m);
        },
        x.m, 1e-4);
  }
  {  // maxpool
    MaxPool1d<double> pool(5);
    Tensor<double> x(1, 3, 30);
    for (Index i = 0; i < x.m.size(); ++i) x.m.data()[i] = rng.uniform(0, 1);
    check_layer(
        "maxpool input",
        [&]() { return pool.forward(x).m.sum(); },
        [&]() {
          pool.forward(x);
          Tensor<double> dy(1, 3, 30);
          dy.m.setOnes();
          return flatten(pool.backward(dy).m);
        },
        x.m, 1e-4);
  }
  {  // batchnorm
    BatchNorm1d<double> bn(3);
    Tensor<double> x(2, 3, 8);
    for (Index i = 0; i < x.m.size(); ++i) x.m.data()[i] = rng.normal();
    MatX<double> r(3, 16);
    for (Index i = 0; i < r.size(); ++i) r.data()[i] = rng.uniform(-1, 1);
    auto fwd = [&]() {
      return (bn.forward(x, Mode::kTrain).m.array() * r.array()).sum();
    };
    check_layer(
        "batchnorm input", fwd,
        [&]() {
          bn.zero_grad();
          Tensor<double> dy(2, 3, 8);
          dy.m = r;
          return flatten(bn.backward(dy).m);
        },
        x.m, 1e-4);
    check_layer(
        "batchnorm gamma", fwd,
        [&]() {
          bn.zero_grad();
          Tensor<double> dy(2, 3, 8);
          dy.m = r;
          bn.backward(dy);
          return flatten(*bn.params("b")[0].grad);
        },
        bn.gamma(), 1e-4);
  }
  {  // relu (nudged off the kink)
    Relu<double> relu;
    Tensor<double> x(1, 2, 20);
    for (Index i = 0; i < x.m.size(); ++i) {
      const double v = rng.uniform(-1, 1);
      x.m.data()[i] = v + (v >= 0 ? 0.05 : -0.05);
    }
    check_layer(
        "relu input",
        [&]() { return relu.forward(x).m.sum(); },
        [&]() {
          relu.forward(x);
          Tensor<double> dy(1, 2, 20);
          dy.m.setOnes();
          return flatten(relu.backward(dy).m);
        },
        x.m, 1e-4);
  }
  {  // linear
    Linear<double> lin(6, 2, rng);
    MatX<double> f(6, 5);
    for (Index i = 0; i < f.size(); ++i) f.data()[i] = rng.normal();
    MatX<double> r(2, 5);
    for (Index i = 0; i < r.size(); ++i) r.data()[i] = rng.uniform(-1, 1);
    check_layer(
        "linear weights",
        [&]() { return (lin.forward(f).array() * r.array()).sum(); },
        [&]() {
          lin.zero_grad();
          lin.forward(f);
          lin.backward(r);
          return flatten(*lin.params("l")[0].grad);
        },
        lin.weight(), 1e-4);
  }

  // Tiny full model at 1e-3.
  if (ok) {
    ModelConfig cfg;
    cfg.in_channels = 2;
    cfg.depth = 2;
    cfg.kernel_sizes = {3, 5};
    cfg.n_classes = 2;
    cfg.time_len = 16;
    cfg.pool_kernel = 3;
    cfg.seed = 42;
    EegInception<double> model(cfg);
    Tensor<double> x(2, 2, 16);
    Rng rng2(123);
    for (Index i = 0; i < x.m.size(); ++i) x.m.data()[i] = rng2.normal();
    const std::vector<int> labels = {0, 1};
    auto params = model.params();
    Index total = 0;
    for (auto& p : params) total += p.value->size();

    auto scatter = [&](const VecX<double>& v) {
      Index at = 0;
      for (auto& p : params)
        for (Index i = 0; i < p.value->size(); ++i)
          p.value->data()[i] = v(at++);
    };
    VecX<double> x0(total);
    {
      Index at = 0;
      for (auto& p : params)
        for (Index i = 0; i < p.value->size(); ++i)
          x0(at++) = p.value->data()[i];
    }
    auto fn = [&](const VecX<double>& v) {
      scatter(v);
      return softmax_cross_entropy(model.forward(x, Mode::kTrain), labels).loss;
    };
    auto grad = [&](const VecX<double>& v) {
      scatter(v);
      auto loss = softmax_cross_entropy(model.forward(x, Mode::kTrain), labels);
      model.zero_grad();
      model.backward(loss.grad_logits);
      VecX<double> g(total);
      Index at = 0;
      for (auto& p : params)
        for (Index i = 0; i < p.grad->size(); ++i) g(at++) = p.grad->data()[i];
      return g;
    };
    auto rep = grad_check(fn, grad, x0, 1e-5, 50, 2024);
    worst = std::max(worst, rep.max_rel_error);
    if (rep.max_rel_error > 1e-3) {
      ok = false;
      detail = "full model error " + std::to_string(rep.max_rel_error);
    }
  }

  // Mutation test: a corrupted backward must be detected.
  if (ok) {
    Rng rng3(5);
    Conv1d<double> conv(2, 2, 3, rng3);
    Tensor<double> x(1, 2, 10);
    for (Index i = 0; i < x.m.size(); ++i) x.m.data()[i] = rng3.normal();
    MatX<double> r(2, 10);
    for (Index i = 0; i < r.size(); ++i) r.data()[i] = rng3.uniform(-1, 1);
    const VecX<double> w0 = flatten(conv.weight());
    auto fn = [&](const VecX<double>& v) {
      Eigen::Map<VecX<double>>(conv.weight().data(), conv.weight().size()) = v;
      return (conv.forward(x).m.array() * r.array()).sum();
    };
    auto corrupted = [&](const VecX<double>& v) {
      Eigen::Map<VecX<double>>(conv.weight().data(), conv.weight().size()) = v;
      conv.forward(x);
      conv.zero_grad();
      Tensor<double> dy(1, 2, 10);
      dy.m = r;
      conv.backward(dy);
      return VecX<double>(2.0 * flatten(*conv.params("c")[0].grad));
    };
    auto rep = grad_check(fn, corrupted, w0, 1e-5, 50, 31);
    if (rep.max_rel_error <= 1e-1) {
      ok = false;
      detail = "corrupted gradient slipped through at " +
               std::to_string(rep.max_rel_error);
    }
  }

  const double dt = seconds_since(t0);
  if (ok && dt >= 60.0) {
    ok = false;
    detail = "took " + std::to_string(dt) + " s, budget 60 s";
  }
  if (ok)
    detail = "worst layer error " + std::to_string(worst) + ", " +
             std::to_string(dt) + " s";
  report(3, "finite-difference gradient suite with mutation check", ok, detail);
}

// --------------------------------------------------------------------------
// 4. Filter suite.
// --------------------------------------------------------------------------
void criterion_4() {
  bool ok = true;
  std::string detail;
  SosFilter f = design_butterworth_highpass(8, 100.0, 250.0);

  const double at100 = magnitude_db(f, 100.0);
  const double at10 = magnitude_db(f, 10.0);
  const double at_nyq = magnitude_db(f, 125.0);
  if (std::abs(at100 + 3.01) > 0.1) {
    ok = false;
    detail = "|H(100)| = " + std::to_string(at100) + " dB";
  } else if (at10 > -80.0) {
    ok = false;
    detail = "|H(10)| = " + std::to_string(at10) + " dB";
  } else if (std::abs(at_nyq) > 0.1) {
    ok = false;
    detail = "|H(Nyquist)| = " + std::to_string(at_nyq) + " dB";
  } else if (!f.stable()) {
    ok = false;
    detail = "unstable section";
  } else {
    VecX<double> tone(750);
    for (Index n = 0; n < 750; ++n)
      tone(n) = std::sin(2.0 * 3.14159265358979323846 * 10.0 * n / 250.0);
    VecX<double> leaked = sos_filter(f, tone);
    const double leak = leaked.tail(500).cwiseAbs().maxCoeff();
    if (leak > 1e-4) {
      ok = false;
      detail = "10 Hz leak " + std::to_string(leak);
    } else {
      std::ostringstream d;
      d.precision(4);
      d << "|H(100)|=" << at100 << " dB, |H(10)|=" << at10
        << " dB, |H(Nyq)|=" << at_nyq << " dB, leak=" << leak;
      detail = d.str();
    }
  }
  report(4, "8th-order Butterworth high-pass anchors", ok, detail);
}

// --------------------------------------------------------------------------
// 5. Augmentation suite.
// --------------------------------------------------------------------------
void criterion_5() {
  bool ok = true;
  std::string detail;

  // Identity with a forced identical donor.
  {
    Trial t;
    t.id = "x";
    t.subject = "S1";
    t.sample_rate_hz = 250.0;
    Rng rng(2);
    t.samples.resize(2, 400);
    for (Index i = 0; i < t.samples.size(); ++i)
      t.samples.data()[i] = rng.normal();
    SosFilter hp = design_butterworth_highpass(8, 100.0, 250.0);
    NoiseCandidate own = extract_noise(t, hp);
    MatX<double> swapped = noise_swap(t.samples, own.noise, own.noise);
    if (!(swapped.array() == t.samples.array()).all()) {
      ok = false;
      detail = "identical-donor swap is not bitwise identity";
    }
  }

  // Size law: 678 -> 2034 at factor 3.
  if (ok) {
    TrialSet set;
    set.channel_names = {"C3"};
    Rng rng(3);
    for (int i = 0; i < 678; ++i) {
      Trial t;
      t.id = "t" + std::to_string(i);
      t.subject = "S1";
      t.label = i % 2;
      t.samples.resize(1, 16);
      for (Index k = 0; k < 16; ++k) t.samples(0, k) = rng.normal();
      set.trials.push_back(std::move(t));
    }
    AugmentOptions opts;
    opts.factor = 3;
    AugmentResult result = augment(set, opts);
    if (result.set.trials.size() != 2034) {
      ok = false;
      detail = "factor 3 on 678 gave " +
               std::to_string(result.set.trials.size());
    }
  }

  // Sub-90 Hz per-bin preservation on band-limited trials.
  if (ok) {
    const Index T = 750;
    const double fs = 250.0;
    TrialSet set;
    set.channel_names = {"C3"};
    Rng rng(7);
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int i = 0; i < 4; ++i) {
      Trial t;
      t.id = "b" + std::to_string(i);
      t.subject = "S1";
      t.label = i % 2;
      t.sample_rate_hz = fs;
      t.samples.setZero(1, T);
      // Content up to 75 Hz: |H| there is ~0.16%, so even worst-case
      // donor/signal amplitude ratios stay well inside the 2% bound.
      const Index max_bin = 225;
      for (Index bin = 1; bin <= max_bin; ++bin) {
        const double amp = rng.uniform(0.5, 1.5);
        const double phase = rng.uniform(0.0, two_pi);
        for (Index n = 0; n < T; ++n)
          t.samples(0, n) += amp * std::cos(two_pi * bin * n / T + phase);
      }
      const Index fade = 100;
      for (Index n = 0; n < fade; ++n) {
        const double w = 0.5 - 0.5 * std::cos(two_pi * 0.5 * n / fade);
        t.samples(0, n) *= w;
        t.samples(0, T - 1 - n) *= w;
      }
      set.trials.push_back(std::move(t));
    }
    AugmentOptions opts;
    opts.factor = 2;
    AugmentResult result = augment(set, opts);
    double worst = 0.0;
    for (const auto& p : result.provenance) {
      const Trial& orig = set.trials[static_cast<size_t>(p.signal_index)];
      const Trial* synth = nullptr;
      for (const auto& t : result.set.trials)
        if (t.id == p.synthetic_id) synth = &t;
      VecX<double> o = orig.samples.row(0).transpose();
      VecX<double> s = synth->samples.row(0).transpose();
      auto so = testutil::naive_dft(o);
      auto ss = testutil::naive_dft(s);
      const double floor_mag = static_cast<double>(T) * 1e-3;
      for (Index k = 1; k * 250 < 90 * T; ++k) {
        const double mo = std::abs(so[static_cast<size_t>(k)]);
        if (mo < floor_mag) continue;
        worst = std::max(worst,
                         std::abs(std::abs(ss[static_cast<size_t>(k)]) - mo) /
                             mo);
      }
    }
    if (worst > 0.02) {
      ok = false;
      detail = "worst sub-90 Hz bin deviation " + std::to_string(worst);
    } else {
      detail = "identity exact; 678->2034; worst bin deviation " +
               std::to_string(worst);
    }
  }
  report(5, "noise-swap identity, size law, spectrum preservation", ok,
         detail);
}

// --------------------------------------------------------------------------
// 6. Metric oracles.
// --------------------------------------------------------------------------
void criterion_6() {
  bool ok = true;
  std::string detail;

  ConfusionMatrix t7(2, 2);
  t7 << 998, 406, 85, 687;
  const double acc = accuracy(t7);
  const double kap = cohen_kappa(t7);
  const double f1 = f1_recall(t7, 1).f1;
  if (std::abs(acc - 0.7744) > 0.0001) {
    ok = false;
    detail = "T7 accuracy " + std::to_string(acc);
  } else if (std::abs(kap - 0.55) > 0.005) {
    ok = false;
    detail = "T7 kappa " + std::to_string(kap);
  } else if (std::abs(f1 - 0.737) > 0.001) {
    ok = false;
    detail = "T7 F1 " + std::to_string(f1);
  }

  if (ok) {
    ConfusionMatrix t8(4, 4);
    t8 << 253, 32, 3, 5, 60, 214, 6, 12, 79, 57, 159, 16, 74, 51, 11, 152;
    const double kap8 = cohen_kappa(t8);
    const double f18 = macro_f1_recall(t8).f1;
    if (std::abs(kap8 - 0.544) > 0.001) {
      ok = false;
      detail = "T8 kappa " + std::to_string(kap8);
    } else if (std::abs(f18 - 0.655) > 0.001) {
      ok = false;
      detail = "T8 macro F1 " + std::to_string(f18);
    }
  }

  if (ok) {
    auto [mean, stddev] = cross_subject_stats(
        {87.20, 79.79, 84.19, 96.32, 94.06, 89.27, 82.98, 90.63, 92.80});
    if (std::abs(mean - 88.58) > 0.01 || std::abs(stddev - 5.50) > 0.01) {
      ok = false;
      detail = "T5 stats " + std::to_string(mean) + " / " +
               std::to_string(stddev);
    }
  }

  if (ok) {
    Rng rng(13);
    double worst = 0.0;
    for (int round = 0; round < 5; ++round) {
      std::vector<double> scores;
      std::vector<int> labels;
      for (int i = 0; i < 200; ++i) {
        scores.push_back(std::round(rng.uniform() * 25.0) / 25.0);
        labels.push_back(rng.uniform() < 0.5 ? 1 : 0);
      }
      double wins = 0;
      long long pairs = 0;
      for (size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (size_t j = 0; j < scores.size(); ++j) {
          if (labels[j] == 1) continue;
          ++pairs;
          if (scores[i] > scores[j]) wins += 1;
          else if (scores[i] == scores[j]) wins += 0.5;
        }
      }
      if (pairs == 0) continue;
      worst = std::max(
          worst, std::abs(roc_auc(scores, labels) - wins / pairs));
    }
    if (worst > 1e-10) {
      ok = false;
      detail = "AUC brute-force gap " + std::to_string(worst);
    } else {
      detail = "Tables 7/8/5 reproduced; AUC matches pairwise counting";
    }
  }
  report(6, "published metric tables and AUC brute force", ok, detail);
}

// --------------------------------------------------------------------------
// 7. Desk-scale end-to-end training.
// --------------------------------------------------------------------------
void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  SynthConfig scfg;
  scfg.n_trials_per_class = 30;  // 60 total -> 40 train / 20 test at 2:1
  scfg.n_channels = 3;
  scfg.time_len = 750;
  scfg.rhythm_amplitude = 1.2;
  scfg.broadband_std = 0.3;
  scfg.highband_std = 0.3;
  scfg.seed = 71;
  TrialSet data = synth_generate(scfg);
  auto [train_set, test_set] = train_test_split(data, 2.0 / 3.0, 5);

  ModelConfig mcfg = binary_config(6);
  mcfg.seed = 7;
  TrainConfig tcfg;
  tcfg.epochs = 100;
  tcfg.batch_size = 32;
  tcfg.seed = 9;

  EegInception<float> model(mcfg);
  TrainHistory history = train(model, train_set, tcfg);
  double best_train = 0.0;
  for (const auto& e : history.epochs)
    best_train = std::max(best_train, e.train_accuracy);
  MetricsReport report_sep = evaluate(model, test_set);

  const double dt = seconds_since(t0);
  if (train_set.trials.size() != 40 || test_set.trials.size() != 20) {
    ok = false;
    detail = "split gave " + std::to_string(train_set.trials.size()) + "/" +
             std::to_string(test_set.trials.size());
  } else if (best_train < 0.95) {
    ok = false;
    detail = "train accuracy " + std::to_string(best_train);
  } else if (report_sep.accuracy < 0.90) {
    ok = false;
    detail = "test accuracy " + std::to_string(report_sep.accuracy);
  } else if (dt >= 600.0) {
    ok = false;
    detail = "took " + std::to_string(dt) + " s, budget 600 s";
  }

  // Chance-level variant: no class marker at all; a large test set keeps
  // the [40, 60]% band far from binomial noise.
  if (ok) {
    SynthConfig chance = scfg;
    chance.rhythm_amplitude = 0.0;
    chance.n_trials_per_class = 120;  // 40 train, 200 test
    chance.seed = 72;
    TrialSet cdata = synth_generate(chance);
    auto [ctrain, ctest] = train_test_split(cdata, 40.0 / 240.0, 6);
    ModelConfig cmcfg = mcfg;
    cmcfg.seed = 8;
    TrainConfig ctcfg = tcfg;
    ctcfg.seed = 10;
    EegInception<float> cmodel(cmcfg);
    train(cmodel, ctrain, ctcfg);
    MetricsReport creport = evaluate(cmodel, ctest);
    if (creport.accuracy < 0.40 || creport.accuracy > 0.60) {
      ok = false;
      detail = "chance-level test accuracy " + std::to_string(creport.accuracy);
    } else {
      std::ostringstream d;
      d.precision(4);
      d << "train " << best_train << ", test " << report_sep.accuracy
        << ", chance " << creport.accuracy << ", " << seconds_since(t0)
        << " s total";
      detail = d.str();
    }
  }
  report(7, "separable synthetic task trains to spec; chance level stays flat",
         ok, detail);
}

// --------------------------------------------------------------------------
// 8. Augmentation direction check.
// --------------------------------------------------------------------------
void criterion_8() {
  bool ok = true;
  std::string detail;

  double sum_plain = 0.0, sum_aug = 0.0;
  const int n_seeds = 5;
  for (int s = 0; s < n_seeds; ++s) {
    SynthConfig scfg;
    scfg.n_trials_per_class = 20;
    scfg.n_channels = 2;
    scfg.time_len = 250;
    scfg.rhythm_amplitude = 0.7;
    scfg.broadband_std = 0.25;
    scfg.highband_std = 2.0;  // the nuisance the swap is meant to tame
    scfg.seed = 100 + static_cast<std::uint64_t>(s);
    TrialSet data = synth_generate(scfg);
    auto [train_set, test_set] = train_test_split(data, 0.6, 50 + s);

    ModelConfig mcfg;
    mcfg.in_channels = 2;
    mcfg.depth = 4;
    mcfg.kernel_sizes = {9, 25};
    mcfg.n_classes = 2;
    mcfg.time_len = 250;
    mcfg.seed = 200 + static_cast<std::uint64_t>(s);

    TrainConfig tcfg;
    tcfg.epochs = 30;
    tcfg.batch_size = 16;
    tcfg.seed = 300 + static_cast<std::uint64_t>(s);

    EegInception<float> plain(mcfg);
    train(plain, train_set, tcfg);
    sum_plain += evaluate(plain, test_set).accuracy;

    TrainConfig acfg = tcfg;
    acfg.augment_factor = 3;
    EegInception<float> augd(mcfg);
    train(augd, train_set, acfg);
    sum_aug += evaluate(augd, test_set).accuracy;
  }
  const double mean_plain = sum_plain / n_seeds;
  const double mean_aug = sum_aug / n_seeds;
  if (mean_aug < mean_plain - 0.02) {
    ok = false;
    detail = "factor 3 mean " + std::to_string(mean_aug) +
             " vs plain " + std::to_string(mean_plain);
  } else {
    std::ostringstream d;
    d.precision(4);
    d << "factor-3 mean " << mean_aug << " vs no-aug " << mean_plain
      << " over " << n_seeds << " seeds";
    detail = d.str();
  }
  report(8, "noise-swap augmentation does not hurt accuracy", ok, detail);
}

// --------------------------------------------------------------------------
// 9. CLI pipeline determinism.
// --------------------------------------------------------------------------
void criterion_9(const std::string& cli) {
  bool ok = true;
  std::string detail;
  const fs::path base =
      fs::temp_directory_path() / "eeginc_acceptance_criterion9";
  fs::remove_all(base);
  fs::create_directories(base);

  const std::string synth_out = (base / "data").string();
  CmdResult r = run_cmd(cli + " synth --out " + synth_out +
                        " --trials-per-class 8 --channels 2 --time-len 128" +
                        " --rhythm-amplitude 1.0 --seed 4242");
  if (r.code != 0) {
    ok = false;
    detail = "synth failed: " + r.out;
  }

  auto pipeline = [&](const std::string& tag) {
    const std::string train_out = (base / ("train_" + tag)).string();
    const std::string eval_out = (base / ("eval_" + tag)).string();
    std::ostringstream cmd;
    cmd << cli << " train --threads 1 --data " << synth_out
        << "/trials.json --out " << train_out
        << " --depth 2 --kernels 3,9 --pool-kernel 3 --epochs 3"
        << " --batch-size 8 --seed 77 --model-seed 5 --augment-factor 2"
        << " --ratio 0.75 --split-seed 3";
    CmdResult t = run_cmd(cmd.str());
    if (t.code != 0) return std::string("train failed: ") + t.out;
    std::ostringstream ecmd;
    ecmd << cli << " eval --threads 1 --model " << train_out
         << "/model.bin --data " << synth_out << "/trials.json --out "
         << eval_out << " --split test --ratio 0.75 --split-seed 3";
    CmdResult e = run_cmd(ecmd.str());
    if (e.code != 0) return std::string("eval failed: ") + e.out;
    return std::string();
  };

  if (ok) {
    const std::string err1 = pipeline("a");
    const std::string err2 = pipeline("b");
    if (!err1.empty() || !err2.empty()) {
      ok = false;
      detail = err1 + err2;
    }
  }
  if (ok) {
    const std::pair<std::string, std::string> pairs[] = {
        {"train_a/model.bin", "train_b/model.bin"},
        {"train_a/history.csv", "train_b/history.csv"},
        {"eval_a/metrics.json", "eval_b/metrics.json"},
        {"eval_a/confusion.csv", "eval_b/confusion.csv"},
        {"eval_a/roc.csv", "eval_b/roc.csv"}};
    for (const auto& [a, b] : pairs) {
      if (!files_identical(base / a, base / b)) {
        ok = false;
        detail = a + " differs between runs";
        break;
      }
    }
    if (ok) detail = "model, history, metrics, confusion, roc all bit-identical";
  }
  report(9, "repeated seeded pipeline runs are bit-identical", ok, detail);
  fs::remove_all(base);
}

// --------------------------------------------------------------------------
// 10. Benchmark sanity; published large-scale numbers are out of reach by
// design and only referenced.
// --------------------------------------------------------------------------
void criterion_10() {
  bool ok = true;
  std::string detail;

  EegInception<float> small(binary_config(6));
  EegInception<float> big(binary_config(64));
  const double t_small = time_inference(small, 5, 2);
  const double t_big = time_inference(big, 3, 1);
  if (!(t_small > 0.0) || !std::isfinite(t_small) || !(t_big > 0.0) ||
      !std::isfinite(t_big)) {
    ok = false;
    detail = "non-finite timing";
  } else if (t_small > t_big) {
    ok = false;
    detail = "depth-6 median " + std::to_string(t_small) +
             " s exceeds depth-64 median " + std::to_string(t_big) + " s";
  } else {
    std::ostringstream d;
    d.precision(4);
    d << "depth-6 " << t_small << " s/sample, depth-64 " << t_big
      << " s/sample on this CPU; the published GPU figure (0.0187 s) and the"
      << " 88.6%/88.4% dataset accuracies need the external recordings and"
      << " hardware and are reference-only";
    detail = d.str();
  }
  report(10, "bench reports finite per-sample time with depth ordering", ok,
         detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-eeginc-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  criterion_1(cli);
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(cli);
  criterion_10();

  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " acceptance criteria failed" << std::endl;
  return 1;
}
