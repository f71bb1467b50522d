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

#include "eeginception/butterworth.hpp"
#include "eeginception/config_json.hpp"
#include "eeginception/dataset_io.hpp"
#include "eeginception/model_io.hpp"
#include "eeginception/threading.hpp"
#include "eeginception/train.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace eeginc;

namespace {

// ---------------------------------------------------------------------------
// Config file handling. A config file is a JSON object with per-concern
// sections; flags given on the command line override file values. Every run
// writes the fully-resolved config next to its outputs, and that file can be
// fed back via --config to replay the run.
// ---------------------------------------------------------------------------
struct FileConfig {
  json root = json::object();

  static FileConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    FileConfig cfg;
    try {
      in >> cfg.root;
    } catch (const json::exception& e) {
      throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    reject_unknown_keys(cfg.root,
                        {"command", "paths", "model", "train", "synth",
                         "augment", "filter", "split", "eval", "bench"},
                        path);
    return cfg;
  }

  json section(const std::string& name) const {
    if (root.contains(name)) return root[name];
    return json::object();
  }
};

struct SplitSettings {
  double ratio = 0.75;
  std::uint64_t seed = 1;
};

SplitSettings split_from_json(const json& j) {
  reject_unknown_keys(j, {"ratio", "seed"}, "split config");
  SplitSettings s;
  if (j.contains("ratio")) s.ratio = j["ratio"].get<double>();
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  return s;
}

json to_json(const SplitSettings& s) {
  json j;
  j["ratio"] = s.ratio;
  j["seed"] = s.seed;
  return j;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

fs::path prepare_out_dir(const std::string& out) {
  if (out.empty()) throw ConfigError("--out directory is required");
  fs::create_directories(out);
  return fs::path(out);
}

void write_resolved(const fs::path& out_dir, const std::string& command,
                    const json& paths, std::initializer_list<
                        std::pair<std::string, json>> sections) {
  json j;
  j["command"] = command;
  j["paths"] = paths;
  for (const auto& [name, body] : sections) j[name] = body;
  write_text(out_dir / "config.resolved", j.dump(2) + "\n");
}

// Registers the model-config flags on a subcommand; apply() folds file
// config and given flags (flags win) into a ModelConfig.
struct ModelFlags {
  int in_channels = 0, depth = 0, n_classes = 0, time_len = 0;
  int n_inception = 0, residual_period = 0, pool_kernel = 0;
  std::vector<int> kernels;
  std::uint64_t seed = 0;
  CLI::Option *o_in = nullptr, *o_depth = nullptr, *o_classes = nullptr,
              *o_time = nullptr, *o_ninc = nullptr, *o_period = nullptr,
              *o_pool = nullptr, *o_kernels = nullptr, *o_seed = nullptr;

  void attach(CLI::App* cmd) {
    o_in = cmd->add_option("--in-channels", in_channels,
                           "Input channel count (default: from data)");
    o_depth = cmd->add_option("--depth", depth, "Branch width M");
    o_kernels = cmd->add_option("--kernels", kernels,
                                "Temporal kernel sizes, ascending odd")
                    ->delimiter(',');
    o_classes = cmd->add_option("--classes", n_classes,
                                "Class count (default: from data)");
    o_time = cmd->add_option("--time-len", time_len,
                             "Model input length (default: from data)");
    o_ninc = cmd->add_option("--n-inception", n_inception,
                             "Number of inception modules");
    o_period = cmd->add_option("--residual-period", residual_period,
                               "Modules per residual block");
    o_pool = cmd->add_option("--pool-kernel", pool_kernel,
                             "Max-pool branch kernel");
    o_seed = cmd->add_option("--model-seed", seed, "Weight init seed");
  }

  ModelConfig apply(const json& file_section) const {
    ModelConfig cfg = model_config_from_json(file_section);
    if (o_in->count()) cfg.in_channels = in_channels;
    if (o_depth->count()) cfg.depth = depth;
    if (o_kernels->count()) cfg.kernel_sizes = kernels;
    if (o_classes->count()) cfg.n_classes = n_classes;
    if (o_time->count()) cfg.time_len = time_len;
    if (o_ninc->count()) cfg.n_inception = n_inception;
    if (o_period->count()) cfg.residual_period = residual_period;
    if (o_pool->count()) cfg.pool_kernel = pool_kernel;
    if (o_seed->count()) cfg.seed = seed;
    return cfg;
  }

  bool data_defaults_wanted(const json& file_section) const {
    return !(o_in->count() || file_section.contains("in_channels")) ||
           !(o_classes->count() || file_section.contains("n_classes")) ||
           !(o_time->count() || file_section.contains("time_len"));
  }

  void fill_from_data(ModelConfig& cfg, const json& file_section,
                      const TrialSet& data) const {
    if (!o_in->count() && !file_section.contains("in_channels"))
      cfg.in_channels = static_cast<int>(data.channel_names.size());
    if (!o_classes->count() && !file_section.contains("n_classes"))
      cfg.n_classes = data.n_classes;
    if (!o_time->count() && !file_section.contains("time_len")) {
      Index shortest = 0;
      for (const auto& t : data.trials)
        shortest = shortest == 0 ? t.length() : std::min(shortest, t.length());
      require(shortest > 0, "cannot infer time length from an empty dataset");
      cfg.time_len = static_cast<int>(shortest);
    }
  }
};

struct TrainFlags {
  int epochs = 0, batch_size = 0, factor = 0;
  double lr = 0, beta1 = 0, beta2 = 0, eps = 0;
  std::uint64_t seed = 0;
  bool eps_inside = false, same_class = false, zero_phase = false;
  CLI::Option *o_epochs = nullptr, *o_batch = nullptr, *o_lr = nullptr,
              *o_b1 = nullptr, *o_b2 = nullptr, *o_eps = nullptr,
              *o_inside = nullptr, *o_seed = nullptr, *o_factor = nullptr,
              *o_same = nullptr, *o_zero = nullptr;

  void attach(CLI::App* cmd) {
    o_epochs = cmd->add_option("--epochs", epochs, "Training epochs");
    o_batch = cmd->add_option("--batch-size", batch_size, "Minibatch size");
    o_lr = cmd->add_option("--lr", lr, "Adam learning rate");
    o_b1 = cmd->add_option("--beta1", beta1, "Adam beta1");
    o_b2 = cmd->add_option("--beta2", beta2, "Adam beta2");
    o_eps = cmd->add_option("--adam-eps", eps, "Adam epsilon");
    o_inside = cmd->add_flag("--adam-eps-inside-sqrt", eps_inside,
                             "Place epsilon under the radical");
    o_seed = cmd->add_option("--seed", seed, "Training seed");
    o_factor = cmd->add_option("--augment-factor", factor,
                               "Noise-swap expansion factor (1 = off)");
    o_same = cmd->add_flag("--same-class-donors", same_class,
                           "Restrict noise donors to the same class");
    o_zero = cmd->add_flag("--zero-phase", zero_phase,
                           "Zero-phase (forward-backward) noise extraction");
  }

  TrainConfig apply(const json& file_section) const {
    TrainConfig cfg = train_config_from_json(file_section);
    if (o_epochs->count()) cfg.epochs = epochs;
    if (o_batch->count()) cfg.batch_size = batch_size;
    if (o_lr->count()) cfg.adam.learning_rate = lr;
    if (o_b1->count()) cfg.adam.beta1 = beta1;
    if (o_b2->count()) cfg.adam.beta2 = beta2;
    if (o_eps->count()) cfg.adam.epsilon = eps;
    if (o_inside->count()) cfg.adam.eps_inside_sqrt = eps_inside;
    if (o_seed->count()) cfg.seed = seed;
    if (o_factor->count()) cfg.augment_factor = factor;
    if (o_same->count()) cfg.augment_same_class_donors = same_class;
    if (o_zero->count()) cfg.augment_zero_phase = zero_phase;
    return cfg;
  }
};

TrialSet load_and_clean(const std::string& manifest, bool quiet = false) {
  TrialSet raw = load_trialset(manifest);
  std::map<std::string, double> rates;
  TrialSet kept = filter_rejected(raw, &rates);
  if (!quiet) {
    for (const auto& [subject, rate] : rates) {
      if (rate < 1.0)
        std::cerr << "subject " << subject << ": acceptance rate "
                  << rate * 100.0 << "%\n";
    }
    if (kept.trials.empty())
      std::cerr << "warning: all trials rejected in " << manifest << "\n";
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.
// ---------------------------------------------------------------------------

int run_synth(const FileConfig& file, const std::string& out,
              const SynthConfig& cfg) {
  const fs::path out_dir = prepare_out_dir(out);
  TrialSet set = synth_generate(cfg);
  save_trialset(set, (out_dir / "trials.json").string());
  json paths;
  paths["out"] = out;
  write_resolved(out_dir, "synth", paths, {{"synth", to_json(cfg)}});
  std::cout << "wrote " << set.trials.size() << " trials to "
            << (out_dir / "trials.json") << "\n";
  (void)file;
  return 0;
}

int run_augment(const std::string& data, const std::string& out,
                const AugmentOptions& opts) {
  const fs::path out_dir = prepare_out_dir(out);
  TrialSet set = load_and_clean(data);
  AugmentResult result = augment(set, opts);
  save_trialset(result.set, (out_dir / "augmented.json").string());

  std::ostringstream prov;
  prov << "synthetic_id,signal_index,donor_index,signal_id,donor_id\n";
  for (const auto& p : result.provenance)
    prov << p.synthetic_id << "," << p.signal_index << "," << p.donor_index
         << "," << set.trials[static_cast<size_t>(p.signal_index)].id << ","
         << set.trials[static_cast<size_t>(p.donor_index)].id << "\n";
  write_text(out_dir / "provenance.csv", prov.str());

  json paths;
  paths["data"] = data;
  paths["out"] = out;
  json a;
  a["factor"] = opts.factor;
  a["seed"] = opts.seed;
  a["cutoff_hz"] = opts.cutoff_hz;
  a["order"] = opts.filter_order;
  a["zero_phase"] = opts.zero_phase;
  a["same_class_donors"] = opts.same_class_donors;
  write_resolved(out_dir, "augment", paths, {{"augment", a}});
  std::cout << "wrote " << result.set.trials.size() << " trials ("
            << result.provenance.size() << " synthetic)\n";
  return 0;
}

int run_train(const FileConfig& file, const ModelFlags& mflags,
              const TrainFlags& tflags, const std::string& data,
              const std::string& out, const SplitSettings& split) {
  const fs::path out_dir = prepare_out_dir(out);
  TrialSet set = load_and_clean(data);
  ModelConfig mcfg = mflags.apply(file.section("model"));
  mflags.fill_from_data(mcfg, file.section("model"), set);
  TrainConfig tcfg = tflags.apply(file.section("train"));

  auto [train_set, test_set] = train_test_split(set, split.ratio, split.seed);
  require(!train_set.trials.empty(), "train: empty training partition");

  EegInception<float> model(mcfg);
  TrainHistory history = train(model, train_set, tcfg);
  save_model(model, (out_dir / "model.bin").string());
  write_text(out_dir / "history.csv", history.to_csv());

  json paths;
  paths["data"] = data;
  paths["out"] = out;
  write_resolved(out_dir, "train", paths,
                 {{"model", to_json(mcfg)},
                  {"train", to_json(tcfg)},
                  {"split", to_json(split)}});
  std::cout << "trained " << model.n_params() << " parameters for "
            << tcfg.epochs << " epochs; final loss "
            << history.epochs.back().loss << ", train accuracy "
            << history.epochs.back().train_accuracy << "\n";
  return 0;
}

int run_eval(const FileConfig& file, const std::string& model_path,
             const std::string& data, const std::string& out,
             const std::string& which, const SplitSettings& split,
             int positive_class) {
  const fs::path out_dir = prepare_out_dir(out);
  EegInception<float> model = load_model<float>(model_path);
  TrialSet set = load_and_clean(data);

  TrialSet target;
  if (which == "all") {
    target = set;
  } else {
    auto [train_set, test_set] = train_test_split(set, split.ratio, split.seed);
    target = which == "train" ? std::move(train_set) : std::move(test_set);
  }
  require(!target.trials.empty(), "eval: selected partition is empty");

  MetricsReport report = evaluate(model, target, positive_class);
  write_text(out_dir / "metrics.json", report.to_json());
  write_text(out_dir / "confusion.csv", report.confusion_csv());
  if (!report.roc.empty()) write_text(out_dir / "roc.csv", report.roc_csv());

  json paths;
  paths["data"] = data;
  paths["model"] = model_path;
  paths["out"] = out;
  json e;
  e["split"] = which;
  e["positive_class"] = positive_class;
  write_resolved(out_dir, "eval", paths,
                 {{"eval", e},
                  {"split", to_json(split)},
                  {"model", to_json(model.config())}});
  std::cout << "accuracy " << report.accuracy << " on " << report.n_samples
            << " samples\n";
  (void)file;
  return 0;
}

int run_params(const FileConfig& file, const ModelFlags& mflags) {
  ModelConfig cfg = mflags.apply(file.section("model"));
  std::cout << count_params(cfg) << "\n";
  return 0;
}

int run_filter_export(int order, double cutoff, double rate,
                      const std::string& out) {
  SosFilter f = design_butterworth_highpass(order, cutoff, rate);
  const std::string table = export_coefficients(f);
  if (out.empty()) {
    std::cout << table;
  } else {
    const fs::path out_dir = prepare_out_dir(out);
    write_text(out_dir / "coefficients.txt", table);
    json paths;
    paths["out"] = out;
    json fj;
    fj["order"] = order;
    fj["cutoff_hz"] = cutoff;
    fj["sample_rate_hz"] = rate;
    write_resolved(out_dir, "filter-export", paths, {{"filter", fj}});
  }
  return 0;
}

int run_ablate(const FileConfig& file, const ModelFlags& mflags,
               const TrainFlags& tflags, const std::string& data,
               const std::string& out, const std::vector<int>& depths,
               const SplitSettings& split) {
  const fs::path out_dir = prepare_out_dir(out);
  TrialSet set = load_and_clean(data);
  ModelConfig mcfg = mflags.apply(file.section("model"));
  mflags.fill_from_data(mcfg, file.section("model"), set);
  TrainConfig tcfg = tflags.apply(file.section("train"));
  auto [train_set, test_set] = train_test_split(set, split.ratio, split.seed);

  auto rows = ablate(depths, mcfg, train_set, test_set, tcfg, out_dir.string());
  write_text(out_dir / "ablation.csv", ablation_csv(rows));
  for (const auto& r : rows) {
    if (r.error.empty())
      std::cout << "depth " << r.depth << ": " << r.params << " params, "
                << r.train_seconds << " s train, accuracy " << r.test_accuracy
                << "\n";
    else
      std::cerr << "depth " << r.depth << ": FAILED (" << r.error << ")\n";
  }

  json paths;
  paths["data"] = data;
  paths["out"] = out;
  json extra = to_json(mcfg);
  write_resolved(out_dir, "ablate", paths,
                 {{"model", extra},
                  {"train", to_json(tcfg)},
                  {"split", to_json(split)}});
  return 0;
}

int run_loso(const FileConfig& file, const ModelFlags& mflags,
             const TrainFlags& tflags, const std::string& data,
             const std::string& out, const SplitSettings& split) {
  const fs::path out_dir = prepare_out_dir(out);
  TrialSet set = load_and_clean(data);
  ModelConfig mcfg = mflags.apply(file.section("model"));
  mflags.fill_from_data(mcfg, file.section("model"), set);
  TrainConfig tcfg = tflags.apply(file.section("train"));

  LosoResult result = loso_evaluate(set, mcfg, tcfg, split.ratio, split.seed);

  std::ostringstream per;
  per.precision(10);
  per << "subject,accuracy,kappa,macro_f1,n_samples\n";
  for (const auto& [subject, report] : result.per_subject)
    per << subject << "," << report.accuracy << "," << report.kappa << ","
        << report.macro_f1 << "," << report.n_samples << "\n";
  write_text(out_dir / "loso.csv", per.str());
  write_text(out_dir / "metrics.json", result.pooled.to_json());
  write_text(out_dir / "confusion.csv", result.pooled.confusion_csv());
  for (const auto& s : result.skipped)
    std::cerr << "warning: subject " << s << " skipped (no trials)\n";

  json paths;
  paths["data"] = data;
  paths["out"] = out;
  write_resolved(out_dir, "loso", paths,
                 {{"model", to_json(mcfg)},
                  {"train", to_json(tcfg)},
                  {"split", to_json(split)}});
  std::cout << "pooled accuracy " << result.pooled.accuracy << " over "
            << result.per_subject.size() << " subjects\n";
  return 0;
}

int run_bench(const FileConfig& file, const ModelFlags& mflags,
              const std::string& model_path, const std::string& out,
              int samples, int warmup) {
  EegInception<float> model =
      model_path.empty()
          ? EegInception<float>(mflags.apply(file.section("model")))
          : load_model<float>(model_path);
  const double median = time_inference(model, samples, warmup);
  std::cout << "median seconds per sample: " << median << " ("
            << model.n_params() << " parameters)\n";
  if (!out.empty()) {
    const fs::path out_dir = prepare_out_dir(out);
    json b;
    b["seconds_per_sample"] = median;
    b["samples"] = samples;
    b["warmup"] = warmup;
    b["params"] = model.n_params();
    write_text(out_dir / "bench.json", b.dump(2) + "\n");
    json paths;
    paths["model"] = model_path;
    paths["out"] = out;
    write_resolved(out_dir, "bench", paths,
                   {{"model", to_json(model.config())},
                    {"bench", b}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EEG-Inception training and evaluation engine"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 0;
  app.add_option("--config", config_path,
                 "JSON config file; flags override file values")
      ->expected(1);
  auto* threads_opt =
      app.add_option("--threads", threads,
                     "Worker cap (default: EEGINC_THREADS or 1; 1 is the "
                     "bitwise-deterministic mode)");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic trial set");
  std::string synth_out;
  synth->add_option("--out", synth_out, "Output directory")->required();
  SynthConfig sflags;
  CLI::Option *s_tpc, *s_cls, *s_ch, *s_tl, *s_rate, *s_rhz, *s_ramp, *s_bb,
      *s_hb, *s_sub, *s_seed, *s_map;
  std::vector<int> synth_map;
  s_tpc = synth->add_option("--trials-per-class", sflags.n_trials_per_class);
  s_cls = synth->add_option("--classes", sflags.n_classes);
  s_ch = synth->add_option("--channels", sflags.n_channels);
  s_tl = synth->add_option("--time-len", sflags.time_len);
  s_rate = synth->add_option("--rate", sflags.sample_rate_hz);
  s_rhz = synth->add_option("--rhythm-hz", sflags.rhythm_hz);
  s_ramp = synth->add_option("--rhythm-amplitude", sflags.rhythm_amplitude);
  s_bb = synth->add_option("--broadband-std", sflags.broadband_std);
  s_hb = synth->add_option("--highband-std", sflags.highband_std);
  s_sub = synth->add_option("--subjects", sflags.n_subjects);
  s_seed = synth->add_option("--seed", sflags.seed);
  s_map = synth->add_option("--class-channel", synth_map)->delimiter(',');

  // augment
  auto* aug = app.add_subcommand("augment", "Offline noise-swap expansion");
  std::string aug_data, aug_out;
  aug->add_option("--data", aug_data, "Trial-set manifest")->required();
  aug->add_option("--out", aug_out, "Output directory")->required();
  AugmentOptions aflags;
  CLI::Option *a_factor, *a_seed, *a_cut, *a_order, *a_zero, *a_same;
  a_factor = aug->add_option("--factor", aflags.factor);
  a_seed = aug->add_option("--seed", aflags.seed);
  a_cut = aug->add_option("--cutoff", aflags.cutoff_hz);
  a_order = aug->add_option("--order", aflags.filter_order);
  a_zero = aug->add_flag("--zero-phase", aflags.zero_phase);
  a_same = aug->add_flag("--same-class-donors", aflags.same_class_donors);

  // train
  auto* tr = app.add_subcommand("train", "Train a model on a trial set");
  std::string tr_data, tr_out;
  tr->add_option("--data", tr_data, "Trial-set manifest")->required();
  tr->add_option("--out", tr_out, "Output directory")->required();
  ModelFlags tr_model;
  tr_model.attach(tr);
  TrainFlags tr_train;
  tr_train.attach(tr);
  double tr_ratio = 0;
  std::uint64_t tr_split_seed = 0;
  auto* tr_ratio_opt = tr->add_option("--ratio", tr_ratio, "Train fraction");
  auto* tr_ss_opt = tr->add_option("--split-seed", tr_split_seed);

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate a saved model");
  std::string ev_model, ev_data, ev_out, ev_which = "test";
  ev->add_option("--model", ev_model, "Model file")->required();
  ev->add_option("--data", ev_data, "Trial-set manifest")->required();
  ev->add_option("--out", ev_out, "Output directory")->required();
  ev->add_option("--split", ev_which, "Partition: train|test|all")
      ->check(CLI::IsMember({"train", "test", "all"}));
  int ev_pos = 1;
  ev->add_option("--positive-class", ev_pos, "ROC positive class index");
  double ev_ratio = 0;
  std::uint64_t ev_split_seed = 0;
  auto* ev_ratio_opt = ev->add_option("--ratio", ev_ratio, "Train fraction");
  auto* ev_ss_opt = ev->add_option("--split-seed", ev_split_seed);

  // ablate
  auto* ab = app.add_subcommand("ablate", "Depth sweep");
  std::string ab_data, ab_out;
  std::vector<int> ab_depths;
  ab->add_option("--data", ab_data, "Trial-set manifest")->required();
  ab->add_option("--out", ab_out, "Output directory")->required();
  ab->add_option("--depths", ab_depths, "Depths to sweep")
      ->delimiter(',')
      ->required();
  ModelFlags ab_model;
  ab_model.attach(ab);
  TrainFlags ab_train;
  ab_train.attach(ab);
  double ab_ratio = 0;
  std::uint64_t ab_split_seed = 0;
  auto* ab_ratio_opt = ab->add_option("--ratio", ab_ratio, "Train fraction");
  auto* ab_ss_opt = ab->add_option("--split-seed", ab_split_seed);

  // loso
  auto* lo = app.add_subcommand("loso", "Leave-one-subject-out evaluation");
  std::string lo_data, lo_out;
  lo->add_option("--data", lo_data, "Trial-set manifest")->required();
  lo->add_option("--out", lo_out, "Output directory")->required();
  ModelFlags lo_model;
  lo_model.attach(lo);
  TrainFlags lo_train;
  lo_train.attach(lo);
  double lo_ratio = 0;
  std::uint64_t lo_split_seed = 0;
  auto* lo_ratio_opt = lo->add_option("--ratio", lo_ratio, "Train fraction");
  auto* lo_ss_opt = lo->add_option("--split-seed", lo_split_seed);

  // params
  auto* pa = app.add_subcommand("params", "Print the parameter count");
  ModelFlags pa_model;
  pa_model.attach(pa);

  // filter-export
  auto* fe = app.add_subcommand("filter-export",
                                "Dump the high-pass coefficient table");
  int fe_order = 8;
  double fe_cut = 100.0, fe_rate = 250.0;
  std::string fe_out;
  fe->add_option("--order", fe_order);
  fe->add_option("--cutoff", fe_cut);
  fe->add_option("--rate", fe_rate);
  fe->add_option("--out", fe_out, "Optional output directory");

  // bench
  auto* be = app.add_subcommand("bench", "Time single-sample inference");
  std::string be_model, be_out;
  int be_samples = 100, be_warmup = 3;
  ModelFlags be_flags;
  be_flags.attach(be);
  be->add_option("--model", be_model, "Model file (otherwise built fresh)");
  be->add_option("--samples", be_samples);
  be->add_option("--warmup", be_warmup);
  be->add_option("--out", be_out, "Optional output directory");

  try {
    app.parse(argc, argv);

    FileConfig file;
    if (!config_path.empty()) file = FileConfig::load(config_path);
    if (threads_opt->count()) set_thread_count(threads);

    auto split_settings = [&](CLI::Option* ratio_opt, double ratio,
                              CLI::Option* seed_opt, std::uint64_t seed) {
      SplitSettings s = split_from_json(file.section("split"));
      if (ratio_opt->count()) s.ratio = ratio;
      if (seed_opt->count()) s.seed = seed;
      return s;
    };

    if (synth->parsed()) {
      SynthConfig cfg = synth_config_from_json(file.section("synth"));
      if (s_tpc->count()) cfg.n_trials_per_class = sflags.n_trials_per_class;
      if (s_cls->count()) cfg.n_classes = sflags.n_classes;
      if (s_ch->count()) cfg.n_channels = sflags.n_channels;
      if (s_tl->count()) cfg.time_len = sflags.time_len;
      if (s_rate->count()) cfg.sample_rate_hz = sflags.sample_rate_hz;
      if (s_rhz->count()) cfg.rhythm_hz = sflags.rhythm_hz;
      if (s_ramp->count()) cfg.rhythm_amplitude = sflags.rhythm_amplitude;
      if (s_bb->count()) cfg.broadband_std = sflags.broadband_std;
      if (s_hb->count()) cfg.highband_std = sflags.highband_std;
      if (s_sub->count()) cfg.n_subjects = sflags.n_subjects;
      if (s_seed->count()) cfg.seed = sflags.seed;
      if (s_map->count()) cfg.class_channel = synth_map;
      return run_synth(file, synth_out, cfg);
    }
    if (aug->parsed()) {
      AugmentOptions opts;
      const json a = file.section("augment");
      reject_unknown_keys(a,
                          {"factor", "seed", "cutoff_hz", "order",
                           "zero_phase", "same_class_donors"},
                          "augment config");
      if (a.contains("factor")) opts.factor = a["factor"].get<int>();
      if (a.contains("seed")) opts.seed = a["seed"].get<std::uint64_t>();
      if (a.contains("cutoff_hz")) opts.cutoff_hz = a["cutoff_hz"].get<double>();
      if (a.contains("order")) opts.filter_order = a["order"].get<int>();
      if (a.contains("zero_phase")) opts.zero_phase = a["zero_phase"].get<bool>();
      if (a.contains("same_class_donors"))
        opts.same_class_donors = a["same_class_donors"].get<bool>();
      if (a_factor->count()) opts.factor = aflags.factor;
      if (a_seed->count()) opts.seed = aflags.seed;
      if (a_cut->count()) opts.cutoff_hz = aflags.cutoff_hz;
      if (a_order->count()) opts.filter_order = aflags.filter_order;
      if (a_zero->count()) opts.zero_phase = aflags.zero_phase;
      if (a_same->count()) opts.same_class_donors = aflags.same_class_donors;
      return run_augment(aug_data, aug_out, opts);
    }
    if (tr->parsed())
      return run_train(file, tr_model, tr_train, tr_data, tr_out,
                       split_settings(tr_ratio_opt, tr_ratio, tr_ss_opt,
                                      tr_split_seed));
    if (ev->parsed())
      return run_eval(file, ev_model, ev_data, ev_out, ev_which,
                      split_settings(ev_ratio_opt, ev_ratio, ev_ss_opt,
                                     ev_split_seed),
                      ev_pos);
    if (ab->parsed())
      return run_ablate(file, ab_model, ab_train, ab_data, ab_out, ab_depths,
                        split_settings(ab_ratio_opt, ab_ratio, ab_ss_opt,
                                       ab_split_seed));
    if (lo->parsed())
      return run_loso(file, lo_model, lo_train, lo_data, lo_out,
                      split_settings(lo_ratio_opt, lo_ratio, lo_ss_opt,
                                     lo_split_seed));
    if (pa->parsed()) return run_params(file, pa_model);
    if (fe->parsed()) return run_filter_export(fe_order, fe_cut, fe_rate, fe_out);
    if (be->parsed())
      return run_bench(file, be_flags, be_model, be_out, be_samples, be_warmup);
    throw ConfigError("no subcommand given");
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
