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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpsqc/ansatz.hpp"
#include "mpsqc/data_io.hpp"
#include "mpsqc/error.hpp"
#include "mpsqc/metrics.hpp"
#include "mpsqc/pipeline.hpp"

namespace mpsqc {

using json = nlohmann::json;

inline constexpr const char *kModelFormat = "mpsqc-model/1";
inline constexpr const char *kTaskFormat = "mpsqc-task/1";
inline constexpr const char *kReportFormat = "mpsqc-report/1";

// ---------------------------------------------------------------- model

inline json model_to_json(const TrainedModel &m) {
  return json{
      {"format", kModelFormat},
      {"task", m.task_name},
      {"n_data", m.circuit.n_data()},
      {"use_ancilla", m.circuit.use_ancilla()},
      {"theta", m.theta},
      {"bounds", {{"min", m.bounds.min}, {"max", m.bounds.max}}},
      {"classes",
       {{"negative", {{"id", m.classes.negative_id}, {"name", m.classes.negative_name}}},
        {"positive", {{"id", m.classes.positive_id}, {"name", m.classes.positive_name}}}}},
      {"feature_names", m.feature_names},
      {"history", m.history},
      {"restart_costs", m.restart_costs},
      {"best_restart", m.best_restart},
  };
}

inline TrainedModel model_from_json(const json &j) {
  if (j.value("format", "") != kModelFormat)
    throw ValidationError("not a model file (format tag missing or unknown)");
  TrainedModel m;
  m.circuit = build_circuit(j.at("n_data").get<int>(),
                            j.at("use_ancilla").get<bool>());
  m.theta = j.at("theta").get<std::vector<double>>();
  m.circuit.check_theta(m.theta);
  for (double t : m.theta)
    if (!std::isfinite(t))
      throw ValidationError("model theta contains a non-finite value");
  m.bounds.min = j.at("bounds").at("min").get<std::vector<double>>();
  m.bounds.max = j.at("bounds").at("max").get<std::vector<double>>();
  if (static_cast<int>(m.bounds.size()) != m.circuit.n_data() ||
      m.bounds.max.size() != m.bounds.min.size())
    throw ValidationError("model bounds do not match n_data");
  const auto &cls = j.at("classes");
  m.classes.negative_id = cls.at("negative").at("id").get<int>();
  m.classes.negative_name = cls.at("negative").at("name").get<std::string>();
  m.classes.positive_id = cls.at("positive").at("id").get<int>();
  m.classes.positive_name = cls.at("positive").at("name").get<std::string>();
  m.task_name = j.value("task", "");
  m.feature_names = j.value("feature_names", std::vector<std::string>{});
  m.history = j.value("history", std::vector<double>{});
  m.restart_costs = j.value("restart_costs", std::vector<double>{});
  m.best_restart = j.value("best_restart", 0);
  return m;
}

// ---------------------------------------------------------------- tasks

/// Everything needed to rebuild a BinaryTask exactly: where the data came
/// from, which classes, and the recorded split.
struct TaskManifest {
  std::string name;
  std::string source_path;
  CsvOptions csv;
  int negative_id = 0;
  int positive_id = 0;
  std::string negative_name;
  std::string positive_name;
  double ratio = 0.8;
  std::uint64_t root_seed = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> source_rows;
  Split split;
};

inline TaskManifest make_manifest(const BinaryTask &task,
                                  const std::string &source_path,
                                  const CsvOptions &csv,
                                  std::uint64_t root_seed) {
  return {task.name,          source_path,        csv,
          task.negative_id,   task.positive_id,   task.negative_name,
          task.positive_name, task.ratio,         root_seed,
          task.seed,          task.source_rows,   task.split};
}

inline json manifest_to_json(const TaskManifest &m) {
  return json{
      {"format", kTaskFormat},
      {"name", m.name},
      {"source",
       {{"path", m.source_path},
        {"schema", to_string(m.csv.schema)},
        {"label_column", m.csv.label_column},
        {"delimiter", std::string(1, m.csv.delimiter)},
        {"features", m.csv.features}}},
      {"negative_class", {{"id", m.negative_id}, {"name", m.negative_name}}},
      {"positive_class", {{"id", m.positive_id}, {"name", m.positive_name}}},
      {"ratio", m.ratio},
      {"root_seed", m.root_seed},
      {"seed", m.seed},
      {"rows", m.source_rows},
      {"train", m.split.train},
      {"test", m.split.test},
  };
}

inline TaskManifest manifest_from_json(const json &j) {
  if (j.value("format", "") != kTaskFormat)
    throw ValidationError("not a task manifest (format tag missing or unknown)");
  TaskManifest m;
  m.name = j.at("name").get<std::string>();
  const auto &src = j.at("source");
  m.source_path = src.at("path").get<std::string>();
  m.csv.schema = schema_from_string(src.at("schema").get<std::string>());
  m.csv.label_column = src.value("label_column", "");
  const auto delim = src.value("delimiter", std::string(","));
  m.csv.delimiter = delim.empty() ? ',' : delim[0];
  m.csv.features = src.value("features", std::vector<std::string>{});
  m.negative_id = j.at("negative_class").at("id").get<int>();
  m.negative_name = j.at("negative_class").value("name", "");
  m.positive_id = j.at("positive_class").at("id").get<int>();
  m.positive_name = j.at("positive_class").value("name", "");
  m.ratio = j.at("ratio").get<double>();
  m.root_seed = j.at("root_seed").get<std::uint64_t>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.source_rows = j.at("rows").get<std::vector<std::size_t>>();
  m.split.train = j.at("train").get<std::vector<std::size_t>>();
  m.split.test = j.at("test").get<std::vector<std::size_t>>();
  return m;
}

/// Reloads the source data and rebuilds the task with its recorded split.
/// Relative source paths resolve against `base_dir`.
inline BinaryTask materialize(const TaskManifest &m,
                              const std::filesystem::path &base_dir = {}) {
  std::filesystem::path src(m.source_path);
  if (src.is_relative() && !base_dir.empty())
    src = base_dir / src;
  const RawDataset data = load_csv(src.string(), m.csv);
  BinaryTask t = select_pair(data, m.negative_id, m.positive_id);
  if (t.source_rows != m.source_rows)
    throw ValidationError("task '" + m.name +
                          "': source data no longer matches the manifest rows");
  std::vector<bool> seen(t.rows.size(), false);
  for (const auto *part : {&m.split.train, &m.split.test})
    for (std::size_t i : *part) {
      if (i >= seen.size() || seen[i])
        throw ValidationError("task '" + m.name +
                              "': split indices are not a partition");
      seen[i] = true;
    }
  for (bool s : seen)
    if (!s)
      throw ValidationError("task '" + m.name +
                            "': split does not cover every row");
  t.name = m.name;
  t.ratio = m.ratio;
  t.seed = m.seed;
  t.split = m.split;
  if (!m.negative_name.empty())
    t.negative_name = m.negative_name;
  if (!m.positive_name.empty())
    t.positive_name = m.positive_name;
  return t;
}

// --------------------------------------------------------------- reports

inline json metric_json(const Metric &m) {
  return m.defined() ? json(m.value()) : json(nullptr);
}

inline json report_to_json(const EvalReport &r, const std::string &task,
                           const std::string &split,
                           const std::string &backend) {
  json undefined = json::array();
  if (!r.sens.defined())
    undefined.push_back("sens");
  if (!r.spec.defined())
    undefined.push_back("spec");
  if (!r.gini.defined())
    undefined.push_back("gini");
  if (!r.taylor.correlation.defined())
    undefined.push_back("taylor.correlation");
  return json{
      {"format", kReportFormat},
      {"task", task},
      {"split", split},
      {"backend", backend},
      {"n", r.counts.total()},
      {"counts",
       {{"tp", r.counts.tp}, {"tn", r.counts.tn}, {"fp", r.counts.fp}, {"fn", r.counts.fn}}},
      {"cost", r.cost},
      {"acc", r.acc},
      {"sens", metric_json(r.sens)},
      {"spec", metric_json(r.spec)},
      {"gini", metric_json(r.gini)},
      {"taylor",
       {{"series", "actual labels vs scores"},
        {"stddev_actual", r.taylor.stddev_actual},
        {"stddev_pred", r.taylor.stddev_pred},
        {"correlation", metric_json(r.taylor.correlation)},
        {"centered_rmsd", r.taylor.centered_rmsd}}},
      {"undefined", undefined},
  };
}

namespace detail {
inline std::string fmt_metric(const Metric &m) {
  if (!m.defined())
    return "nan (undefined)";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << m.value();
  return os.str();
}
} // namespace detail

inline void write_report_text(std::ostream &os, const EvalReport &r,
                              const std::string &task, const std::string &split) {
  os << "# evaluation report: task " << task << ", split " << split << "\n"
     << "# taylor statistics compare binary actual labels with scores m\n"
     << std::fixed << std::setprecision(4)
     << "n             " << r.counts.total() << "\n"
     << "tp tn fp fn   " << r.counts.tp << ' ' << r.counts.tn << ' '
     << r.counts.fp << ' ' << r.counts.fn << "\n"
     << "cost          " << r.cost << "\n"
     << "acc           " << std::setprecision(2) << r.acc << "\n"
     << std::setprecision(4)
     << "spec          " << detail::fmt_metric(r.spec) << "\n"
     << "sens          " << detail::fmt_metric(r.sens) << "\n"
     << "gini          " << detail::fmt_metric(r.gini) << "\n"
     << "sd_actual     " << r.taylor.stddev_actual << "\n"
     << "sd_pred       " << r.taylor.stddev_pred << "\n"
     << "correlation   " << detail::fmt_metric(r.taylor.correlation) << "\n"
     << "crmsd         " << r.taylor.centered_rmsd << "\n";
}

/// One row per sample: index, actual, score, predicted.
inline void write_samples_csv(std::ostream &os, const EvalReport &r) {
  os << "index,actual,score,predicted\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.per_sample.size(); ++i) {
    const auto &s = r.per_sample[i];
    os << i << ',' << s.actual << ',' << s.score << ',' << s.predicted << '\n';
  }
}

inline void write_history_csv(std::ostream &os, const TrainedModel &m) {
  os << "iteration,cost\n" << std::setprecision(17);
  for (std::size_t i = 0; i < m.history.size(); ++i)
    os << i << ',' << m.history[i] << '\n';
}

// ------------------------------------------------------------------ files

inline json read_json_file(const std::filesystem::path &p) {
  std::ifstream in(p);
  if (!in)
    throw IngestionError(p.string(), 0, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw IngestionError(p.string(), 0, std::string("invalid JSON: ") + e.what());
  }
}

inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

} // namespace mpsqc
