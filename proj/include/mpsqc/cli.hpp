// Copyright 2026 The mpsqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "mpsqc/ansatz.hpp"
#include "mpsqc/data_io.hpp"
#include "mpsqc/error.hpp"
#include "mpsqc/metrics.hpp"
#include "mpsqc/mps/mps_state.hpp"
#include "mpsqc/pipeline.hpp"
#include "mpsqc/serialization.hpp"
#include "mpsqc/training.hpp"

namespace mpsqc::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Collects output files and publishes them together: everything is written
/// to temporaries first and renamed only once all writes succeeded.
class OutputBatch {
public:
  explicit OutputBatch(fs::path dir) : dir_(std::move(dir)) {}

  void add(const std::string &name, std::string content) {
    files_.emplace_back(dir_ / name, std::move(content));
  }

  std::vector<fs::path> commit() {
    fs::create_directories(dir_);
    std::vector<fs::path> temps;
    try {
      for (const auto &[path, content] : files_) {
        fs::path tmp = path;
        tmp += ".tmp";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        temps.push_back(tmp);
        out << content;
        out.close();
        if (!out)
          throw std::runtime_error("cannot write " + tmp.string());
      }
    } catch (...) {
      for (const auto &t : temps)
        fs::remove(t);
      throw;
    }
    std::vector<fs::path> written;
    for (std::size_t i = 0; i < files_.size(); ++i) {
      fs::rename(temps[i], files_[i].first);
      written.push_back(files_[i].first);
    }
    return written;
  }

private:
  fs::path dir_;
  std::vector<std::pair<fs::path, std::string>> files_;
};

namespace detail {

using nlohmann::json;

/// Flat JSON config merged under command-line flags: a key is applied only
/// when the matching --flag was not given explicitly.
class ConfigBinder {
public:
  explicit ConfigBinder(CLI::App *sub) : sub_(sub) {}

  template <typename T>
  CLI::Option *bind(const std::string &key, T &target, const std::string &help) {
    auto *opt = sub_->add_option("--" + key, target, help)->capture_default_str();
    setters_[key] = [&target](const json &v) { target = v.get<T>(); };
    echo_[key] = [&target]() { return json(target); };
    return opt;
  }

  CLI::Option *bind_flag(const std::string &key, bool &target,
                         const std::string &help) {
    auto *opt = sub_->add_flag("--" + key + ",!--no-" + key, target, help);
    setters_[key] = [&target](const json &v) { target = v.get<bool>(); };
    echo_[key] = [&target]() { return json(target); };
    return opt;
  }

  void apply(const json &config) {
    if (!config.is_object())
      throw ValidationError("config file must hold a flat JSON object");
    for (const auto &[key, value] : config.items()) {
      if (key == "config" || key == "command")
        continue;
      const auto it = setters_.find(key);
      if (it == setters_.end())
        throw ValidationError("unknown config key '" + key + "'");
      if (sub_->get_option("--" + key)->count() == 0) {
        try {
          it->second(value);
        } catch (const json::exception &) {
          throw ValidationError("config key '" + key + "' has the wrong type");
        }
      }
    }
  }

  json resolved(const std::string &command) const {
    json out{{"command", command}};
    for (const auto &[key, get] : echo_)
      out[key] = get();
    return out;
  }

private:
  CLI::App *sub_;
  std::map<std::string, std::function<void(const json &)>> setters_;
  std::map<std::string, std::function<json()>> echo_;
};

inline std::vector<std::pair<int, int>> parse_pairs(const std::string &text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw DomainError("pair '" + item + "' must look like NEG:POS");
    try {
      out.emplace_back(std::stoi(item.substr(0, colon)),
                       std::stoi(item.substr(colon + 1)));
    } catch (const std::exception &) {
      throw DomainError("pair '" + item + "' must hold integer class ids");
    }
  }
  if (out.empty())
    throw DomainError("no class pairs given");
  return out;
}

inline std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

inline std::vector<double> parse_row(const std::string &s) {
  std::vector<double> out;
  for (const auto &cell : split_list(s)) {
    double v = 0.0;
    if (!mpsqc::detail::parse_double(cell, v))
      throw DomainError("row value '" + cell + "' is not numeric");
    out.push_back(v);
  }
  return out;
}

inline std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

} // namespace detail

// ------------------------------------------------------------- commands

struct PrepareArgs {
  std::string schema = "iris";
  std::string input;
  std::string label_column;
  std::string delimiter = ",";
  std::string features;
  std::string pairs = "1:2,2:3,1:3";
  double ratio = 0.8;
  int synth = 0;
  double noise = 1.0;
  std::uint64_t seed = 0;
  std::string name_prefix;
  std::string out_dir = ".";
};

inline int cmd_prepare(const PrepareArgs &a, const nlohmann::json &resolved,
                       std::ostream &out) {
  CsvOptions csv;
  csv.schema = schema_from_string(a.schema);
  csv.label_column = a.label_column;
  if (a.delimiter.size() != 1)
    throw DomainError("delimiter must be a single character");
  csv.delimiter = a.delimiter[0];
  csv.features = detail::split_list(a.features);
  const auto pairs = detail::parse_pairs(a.pairs);

  OutputBatch batch(a.out_dir);
  RawDataset data;
  std::string source_path;
  if (a.synth > 0) {
    if (csv.schema != Schema::Agri)
      throw DomainError("--synth is only available for the agri schema");
    data = synth_agri(static_cast<std::size_t>(a.synth),
                      derive_seed(a.seed, 1000), a.noise);
    std::ostringstream os;
    write_agri_csv(os, data);
    batch.add("agri_synth.csv", os.str());
    source_path = fs::absolute(fs::path(a.out_dir) / "agri_synth.csv").string();
    // Re-read through the normal ingestion path so manifests replay exactly.
    std::istringstream reread(os.str());
    data = read_csv(reread, source_path, csv);
  } else {
    if (a.input.empty())
      throw DomainError("prepare needs --input (or --synth for agri)");
    data = load_csv(a.input, csv);
    source_path = fs::absolute(a.input).string();
  }

  std::string prefix = a.name_prefix;
  if (prefix.empty())
    prefix = csv.schema == Schema::Iris   ? "Iris"
             : csv.schema == Schema::Agri ? "Agri"
                                          : "task";
  const auto tasks = make_pairwise_tasks(data, pairs, a.ratio, a.seed, prefix);
  for (const auto &t : tasks) {
    const auto manifest = make_manifest(t, source_path, csv, a.seed);
    batch.add(t.name + ".task.json", dump(manifest_to_json(manifest)));
  }
  batch.add("prepare.config.json", dump(resolved));
  batch.commit();

  out << "source " << source_path << ": " << data.size() << " rows, "
      << data.feature_names.size() << " features, "
      << data.class_names.size() << " classes";
  if (data.report.rows_dropped)
    out << ", " << data.report.rows_dropped << " rows dropped (missing values)";
  if (data.report.eto_clamped)
    out << ", warning: " << data.report.eto_clamped
        << " ETo values outside [0, 6] clamped";
  out << "\n";
  for (const auto &t : tasks)
    out << t.name << ": classes " << t.negative_id << "->0 " << t.positive_id
        << "->1, " << t.rows.size() << " rows, " << t.split.train.size()
        << " train / " << t.split.test.size() << " test, seed " << t.seed
        << "\n";
  return kOk;
}

struct TrainArgs {
  std::string task;
  std::string optimizer = "cg";
  std::string backend = "dense";
  std::string gradient = "shift";
  int restarts = 3;
  int max_iters = 200;
  double grad_tol = 1e-5;
  double lr = 0.1;
  int batch_size = 16;
  double fd_step = 1e-4;
  std::uint64_t seed = 0;
  bool ancilla = true;
  std::string out_dir = ".";
};

inline TrainConfig to_train_config(const TrainArgs &a) {
  TrainConfig cfg;
  cfg.optimizer = optimizer_from_string(a.optimizer);
  cfg.backend = backend_from_string(a.backend);
  cfg.gradient_mode = gradient_mode_from_string(a.gradient);
  cfg.restarts = a.restarts;
  cfg.max_iters = a.max_iters;
  cfg.grad_tol = a.grad_tol;
  cfg.learning_rate = a.lr;
  cfg.batch_size = a.batch_size;
  cfg.fd_step = a.fd_step;
  cfg.seed = a.seed;
  cfg.validate();
  return cfg;
}

inline BinaryTask load_task(const std::string &manifest_path) {
  const auto manifest = manifest_from_json(read_json_file(manifest_path));
  return materialize(manifest, fs::path(manifest_path).parent_path());
}

inline int cmd_train(const TrainArgs &a, const nlohmann::json &resolved,
                     std::ostream &out) {
  const TrainConfig cfg = to_train_config(a);
  if (a.task.empty())
    throw DomainError("train needs --task");
  const BinaryTask task = load_task(a.task);
  const TrainedModel model = train_task(task, cfg, a.ancilla);
  const EvalReport rep = evaluate_task(model, task, SplitKind::Train, cfg.backend);

  OutputBatch batch(a.out_dir);
  batch.add(task.name + ".model.json", dump(model_to_json(model)));
  std::ostringstream hist;
  write_history_csv(hist, model);
  batch.add(task.name + ".history.csv", hist.str());
  batch.add(task.name + ".train.config.json", dump(resolved));
  batch.commit();

  out << task.name << ": " << model.history.size() - 1
      << " iterations (restart " << model.best_restart << " of "
      << cfg.restarts << "), final train cost " << detail::fmt(model.history.back())
      << ", train accuracy " << detail::fmt(rep.acc, 2) << "\n";
  return kOk;
}

struct EvalArgs {
  std::string model;
  std::string task;
  std::string split = "test";
  std::string backend = "dense";
  std::string out_dir = ".";
};

inline int cmd_eval(const EvalArgs &a, const nlohmann::json &resolved,
                    std::ostream &out) {
  if (a.model.empty() || a.task.empty())
    throw DomainError("eval needs --model and --task");
  const SplitKind which = split_from_string(a.split);
  const Backend backend = backend_from_string(a.backend);
  const TrainedModel model = model_from_json(read_json_file(a.model));
  const BinaryTask task = load_task(a.task);
  const EvalReport rep = evaluate_task(model, task, which, backend);

  const std::string stem = task.name + "." + a.split;
  OutputBatch batch(a.out_dir);
  batch.add(stem + ".report.json",
            dump(report_to_json(rep, task.name, a.split, a.backend)));
  std::ostringstream text, samples;
  write_report_text(text, rep, task.name, a.split);
  write_samples_csv(samples, rep);
  batch.add(stem + ".report.txt", text.str());
  batch.add(stem + ".samples.csv", samples.str());
  batch.add(stem + ".eval.config.json", dump(resolved));
  batch.commit();

  out << text.str();
  return kOk;
}

struct PredictArgs {
  std::string model;
  std::vector<std::string> rows;
  std::string backend = "dense";
};

inline int cmd_predict(const PredictArgs &a, std::ostream &out) {
  if (a.model.empty() || a.rows.empty())
    throw DomainError("predict needs --model and at least one --row");
  const Backend backend = backend_from_string(a.backend);
  const TrainedModel model = model_from_json(read_json_file(a.model));
  out << "label,score,class\n";
  for (const auto &r : a.rows) {
    const auto row = detail::parse_row(r);
    const auto p = predict(model, row, backend);
    const auto &name =
        p.label ? model.classes.positive_name : model.classes.negative_name;
    out << p.label << ',' << std::setprecision(17) << p.score << ',' << name
        << '\n';
  }
  return kOk;
}

struct XcheckArgs {
  int wires = 5;
  int trials = 200;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  std::string out_dir;
};

struct XcheckResult {
  double max_delta = 0.0;
  int worst_trial = -1;
  std::vector<int> max_bond_profile;
  std::vector<int> failed_trials;
  bool bond_bound_ok = true;
};

/// Random (theta, product input) staircase evaluations on both backends.
inline XcheckResult run_xcheck(int wires, int trials, std::uint64_t seed,
                               double tol) {
  if (trials < 1)
    throw DomainError("xcheck needs trials >= 1");
  if (wires < 1 || wires > kMaxQubits)
    throw DomainError("xcheck wires must be in [1, " +
                      std::to_string(kMaxQubits) + "]");
  const auto circuit =
      wires >= 2 ? build_circuit(wires - 1, true) : build_circuit(1, false);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  XcheckResult res;
  res.max_bond_profile.assign(static_cast<std::size_t>(wires - 1), 1);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> theta(static_cast<std::size_t>(circuit.n_params()));
    for (auto &x : theta)
      x = angle(rng);
    std::vector<double> input(static_cast<std::size_t>(circuit.n_data()));
    for (auto &x : input)
      x = angle(rng);

    const auto full = circuit.full_input(encode_sample(input));
    const auto gates = circuit.gates(theta);
    const double m_dense =
        run_and_read(full, gates, circuit.output_wire(), Backend::Dense);

    MpsState mps = from_statevector(full);
    for (const auto &g : gates)
      mps = apply_gate_mps(mps, g);
    const double z = expectation_z_mps(mps, circuit.output_wire());
    const double m_mps = std::clamp((1.0 - z) / 2.0, 0.0, 1.0);

    const auto bonds = mps.bond_dims();
    for (std::size_t k = 0; k < bonds.size(); ++k) {
      res.max_bond_profile[k] = std::max(res.max_bond_profile[k], bonds[k]);
      const int left = static_cast<int>(k) + 1;
      const int bound = 1 << std::min(left, wires - left);
      if (bonds[k] > bound)
        res.bond_bound_ok = false;
    }
    const double delta = std::abs(m_dense - m_mps);
    if (delta > res.max_delta) {
      res.max_delta = delta;
      res.worst_trial = t;
    }
    if (!(delta < tol))
      res.failed_trials.push_back(t);
  }
  return res;
}

inline int cmd_xcheck(const XcheckArgs &a, const nlohmann::json &resolved,
                      std::ostream &out) {
  const XcheckResult r = run_xcheck(a.wires, a.trials, a.seed, a.tol);
  const bool pass = r.failed_trials.empty() && r.bond_bound_ok;
  out << "xcheck wires=" << a.wires << " trials=" << a.trials
      << " seed=" << a.seed << "\n"
      << "max |dm| = " << std::scientific << std::setprecision(3) << r.max_delta
      << " (trial " << r.worst_trial << ")\n"
      << std::defaultfloat << "max bond profile (";
  for (std::size_t k = 0; k < r.max_bond_profile.size(); ++k)
    out << (k ? "," : "") << r.max_bond_profile[k];
  out << ")\n";
  if (!r.failed_trials.empty()) {
    out << "FAILED trials (seed " << a.seed << "):";
    for (int t : r.failed_trials)
      out << ' ' << t;
    out << "\n";
  }
  if (!r.bond_bound_ok)
    out << "FAILED: bond dimension exceeded the dimension-counting bound\n";
  out << (pass ? "PASS" : "FAIL") << "\n";

  if (!a.out_dir.empty()) {
    OutputBatch batch(a.out_dir);
    batch.add("xcheck.json",
              dump(nlohmann::json{{"config", resolved},
                                  {"max_delta", r.max_delta},
                                  {"worst_trial", r.worst_trial},
                                  {"max_bond_profile", r.max_bond_profile},
                                  {"failed_trials", r.failed_trials},
                                  {"pass", pass}}));
    batch.commit();
  }
  return pass ? kOk : kFailure;
}

struct ReportArgs {
  std::vector<std::string> reports;
  std::string out_dir;
};

/// Collates eval reports into one table (one row per task and split).
inline int cmd_report(const ReportArgs &a, std::ostream &out) {
  if (a.reports.empty())
    throw DomainError("report needs at least one --reports file");
  auto cell = [](const nlohmann::json &v) {
    return v.is_null() ? std::string("nan") : detail::fmt(v.get<double>());
  };
  std::ostringstream csv;
  csv << "task,split,n,cost,acc,spec,sens,gini,sd_actual,sd_pred,"
         "correlation,crmsd\n";
  for (const auto &path : a.reports) {
    const auto j = read_json_file(path);
    if (j.value("format", "") != kReportFormat)
      throw ValidationError(path + " is not an evaluation report");
    const auto &t = j.at("taylor");
    csv << j.at("task").get<std::string>() << ','
        << j.at("split").get<std::string>() << ',' << j.at("n").get<long>()
        << ',' << cell(j.at("cost")) << ',' << detail::fmt(j.at("acc").get<double>(), 2)
        << ',' << cell(j.at("spec")) << ',' << cell(j.at("sens")) << ','
        << cell(j.at("gini")) << ',' << cell(t.at("stddev_actual")) << ','
        << cell(t.at("stddev_pred")) << ',' << cell(t.at("correlation")) << ','
        << cell(t.at("centered_rmsd")) << '\n';
  }
  if (!a.out_dir.empty()) {
    OutputBatch batch(a.out_dir);
    batch.add("summary.csv", csv.str());
    batch.commit();
  }
  out << csv.str();
  return kOk;
}

// ---------------------------------------------------------------- driver

inline int run(std::vector<std::string> args, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Matrix product state quantum classifier"};
  app.name("mpsqc");
  app.require_subcommand(1);

  std::string config_path;
  auto add_config = [&](CLI::App *sub) {
    sub->add_option("--config", config_path, "flat JSON config file");
  };

  PrepareArgs pa;
  auto *prep = app.add_subcommand("prepare", "build binary tasks and splits");
  add_config(prep);
  detail::ConfigBinder prep_b(prep);
  prep_b.bind("schema", pa.schema, "iris | agri | generic")
      ->check(CLI::IsMember({"iris", "agri", "generic"}));
  prep_b.bind("input", pa.input, "input CSV file");
  prep_b.bind("label-column", pa.label_column, "label column name");
  prep_b.bind("delimiter", pa.delimiter, "field delimiter");
  prep_b.bind("features", pa.features, "agri feature subset, comma separated");
  prep_b.bind("pairs", pa.pairs, "class pairs NEG:POS,...");
  prep_b.bind("ratio", pa.ratio, "training fraction");
  prep_b.bind("synth", pa.synth, "generate N synthetic agri rows per class");
  prep_b.bind("noise", pa.noise, "synthetic noise scale");
  prep_b.bind("seed", pa.seed, "root seed");
  prep_b.bind("name-prefix", pa.name_prefix, "task name prefix");
  prep_b.bind("out-dir", pa.out_dir, "output directory");

  TrainArgs ta;
  auto *trn = app.add_subcommand("train", "train a classifier on a task");
  add_config(trn);
  detail::ConfigBinder trn_b(trn);
  trn_b.bind("task", ta.task, "task manifest");
  trn_b.bind("optimizer", ta.optimizer, "cg | sgd")
      ->check(CLI::IsMember({"cg", "sgd"}));
  trn_b.bind("backend", ta.backend, "dense | mps")
      ->check(CLI::IsMember({"dense", "mps"}));
  trn_b.bind("gradient", ta.gradient, "shift | fd")
      ->check(CLI::IsMember({"shift", "fd"}));
  trn_b.bind("restarts", ta.restarts, "random restarts");
  trn_b.bind("max-iters", ta.max_iters, "iteration cap");
  trn_b.bind("grad-tol", ta.grad_tol, "gradient infinity-norm tolerance");
  trn_b.bind("lr", ta.lr, "SGD learning rate");
  trn_b.bind("batch-size", ta.batch_size, "SGD batch size");
  trn_b.bind("fd-step", ta.fd_step, "finite-difference step");
  trn_b.bind("seed", ta.seed, "root seed");
  trn_b.bind_flag("ancilla", ta.ancilla, "prepend an ancilla wire (default on)");
  trn_b.bind("out-dir", ta.out_dir, "output directory");

  EvalArgs ea;
  auto *evl = app.add_subcommand("eval", "evaluate a model on a task split");
  add_config(evl);
  detail::ConfigBinder evl_b(evl);
  evl_b.bind("model", ea.model, "model file");
  evl_b.bind("task", ea.task, "task manifest");
  evl_b.bind("split", ea.split, "train | test")
      ->check(CLI::IsMember({"train", "test"}));
  evl_b.bind("backend", ea.backend, "dense | mps")
      ->check(CLI::IsMember({"dense", "mps"}));
  evl_b.bind("out-dir", ea.out_dir, "output directory");

  PredictArgs pra;
  auto *prd = app.add_subcommand("predict", "score raw feature rows");
  add_config(prd);
  detail::ConfigBinder prd_b(prd);
  prd_b.bind("model", pra.model, "model file");
  prd->add_option("--row", pra.rows, "comma-separated raw feature values");
  prd_b.bind("backend", pra.backend, "dense | mps")
      ->check(CLI::IsMember({"dense", "mps"}));

  XcheckArgs xa;
  auto *xck = app.add_subcommand("xcheck", "compare dense and MPS backends");
  add_config(xck);
  detail::ConfigBinder xck_b(xck);
  xck_b.bind("wires", xa.wires, "wire count including the ancilla");
  xck_b.bind("trials", xa.trials, "random trials");
  xck_b.bind("seed", xa.seed, "root seed");
  xck_b.bind("tol", xa.tol, "maximum allowed |dm|");
  xck_b.bind("out-dir", xa.out_dir, "optional output directory");

  ReportArgs ra;
  auto *rpt = app.add_subcommand("report", "collate evaluation reports");
  rpt->add_option("--reports", ra.reports, "report JSON files")->required();
  rpt->add_option("--out-dir", ra.out_dir, "optional output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "mpsqc: " << e.what() << "\n";
    return kUsage;
  }

  try {
    auto with_config = [&](detail::ConfigBinder &binder) {
      if (!config_path.empty())
        binder.apply(read_json_file(config_path));
    };
    if (prep->parsed()) {
      with_config(prep_b);
      return cmd_prepare(pa, prep_b.resolved("prepare"), out);
    }
    if (trn->parsed()) {
      with_config(trn_b);
      return cmd_train(ta, trn_b.resolved("train"), out);
    }
    if (evl->parsed()) {
      with_config(evl_b);
      return cmd_eval(ea, evl_b.resolved("eval"), out);
    }
    if (prd->parsed()) {
      with_config(prd_b);
      return cmd_predict(pra, out);
    }
    if (xck->parsed()) {
      with_config(xck_b);
      return cmd_xcheck(xa, xck_b.resolved("xcheck"), out);
    }
    if (rpt->parsed())
      return cmd_report(ra, out);
  } catch (const DomainError &e) {
    err << "mpsqc: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError &e) {
    err << "mpsqc: numerical failure: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception &e) {
    err << "mpsqc: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

inline int run(int argc, char **argv, std::ostream &out = std::cout,
               std::ostream &err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace mpsqc::cli
