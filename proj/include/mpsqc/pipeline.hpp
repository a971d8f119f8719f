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

#include <span>
#include <string>
#include <vector>

#include "mpsqc/ansatz.hpp"
#include "mpsqc/data_io.hpp"
#include "mpsqc/encoding.hpp"
#include "mpsqc/error.hpp"
#include "mpsqc/metrics.hpp"
#include "mpsqc/training.hpp"

namespace mpsqc {

enum class SplitKind { Train, Test };

inline std::string to_string(SplitKind s) {
  return s == SplitKind::Train ? "train" : "test";
}

inline SplitKind split_from_string(const std::string &s) {
  if (s == "train")
    return SplitKind::Train;
  if (s == "test")
    return SplitKind::Test;
  throw DomainError("unknown split '" + s + "' (expected train or test)");
}

inline const std::vector<std::size_t> &split_indices(const BinaryTask &task,
                                                     SplitKind which) {
  return which == SplitKind::Train ? task.split.train : task.split.test;
}

inline std::vector<EncodedSample>
encode_split(const BinaryTask &task, std::span<const std::size_t> indices,
             const NormalizationBounds &bounds) {
  std::vector<EncodedSample> out;
  out.reserve(indices.size());
  for (std::size_t i : indices)
    out.push_back({normalize(task.rows.at(i), bounds), task.labels.at(i)});
  return out;
}

/// Fits bounds on the training split, trains, and fills in model metadata.
inline TrainedModel train_task(const BinaryTask &task, const TrainConfig &cfg,
                               bool use_ancilla = true) {
  if (task.split.train.empty())
    throw DomainError("task '" + task.name + "' has an empty training split");
  std::vector<std::vector<double>> train_rows;
  for (std::size_t i : task.split.train)
    train_rows.push_back(task.rows.at(i));
  const auto bounds = fit_bounds(train_rows);
  const auto samples = encode_split(task, task.split.train, bounds);
  const auto circuit =
      build_circuit(static_cast<int>(task.feature_names.size()), use_ancilla);

  TrainedModel model = train(circuit, samples, cfg);
  model.bounds = bounds;
  model.task_name = task.name;
  model.feature_names = task.feature_names;
  model.classes = {task.negative_id, task.positive_id, task.negative_name,
                   task.positive_name};
  return model;
}

/// Rejects a model whose feature count or class mapping differs from the task.
inline void check_compatible(const TrainedModel &model, const BinaryTask &task) {
  if (static_cast<int>(task.feature_names.size()) != model.circuit.n_data())
    throw ValidationError("model expects " +
                          std::to_string(model.circuit.n_data()) +
                          " features, task '" + task.name + "' has " +
                          std::to_string(task.feature_names.size()));
  if (model.bounds.size() != task.feature_names.size())
    throw ValidationError("model bounds do not match task feature count");
  if (model.classes.negative_id != task.negative_id ||
      model.classes.positive_id != task.positive_id)
    throw ValidationError("model class mapping (" +
                          std::to_string(model.classes.negative_id) + "->0, " +
                          std::to_string(model.classes.positive_id) +
                          "->1) does not match task '" + task.name + "'");
}

inline EvalReport evaluate_task(const TrainedModel &model,
                                const BinaryTask &task, SplitKind which,
                                Backend backend = Backend::Dense) {
  check_compatible(model, task);
  const auto &idx = split_indices(task, which);
  if (idx.empty())
    throw DomainError("split '" + to_string(which) + "' of task '" +
                      task.name + "' is empty");
  const auto samples = encode_split(task, idx, model.bounds);
  std::vector<StateVector> states;
  std::vector<int> labels;
  for (const auto &s : samples) {
    states.push_back(encode_sample(s.angles));
    labels.push_back(s.label);
  }
  const auto scores =
      evaluate_batch(model.circuit, model.theta, states, backend);
  return make_report(labels, scores);
}

} // namespace mpsqc
