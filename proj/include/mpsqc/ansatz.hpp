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
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpsqc/encoding.hpp"
#include "mpsqc/error.hpp"
#include "mpsqc/mps/mps_state.hpp"
#include "mpsqc/sim/gate.hpp"
#include "mpsqc/sim/state_vector.hpp"

namespace mpsqc {

enum class Backend { Dense, Mps };

inline std::string to_string(Backend b) {
  return b == Backend::Dense ? "dense" : "mps";
}

inline Backend backend_from_string(const std::string &s) {
  if (s == "dense")
    return Backend::Dense;
  if (s == "mps")
    return Backend::Mps;
  throw DomainError("unknown backend '" + s + "' (expected dense or mps)");
}

/// Two-qubit block on wires (low, low + 1). After the block, `low` is
/// discarded and `low + 1` carries on up the chain.
struct Block {
  int low;
  int high;
};

/// Staircase classifier: an optional ancilla on wire 0, then the data wires.
/// Block i applies RY(theta[2i]) to wire i, RY(theta[2i+1]) to wire i+1 and
/// CNOT(i -> i+1). The last wire is read out.
class StaircaseCircuit {
public:
  static constexpr int kMaxDataWires = kMaxQubits - 1;

  StaircaseCircuit(int n_data, bool use_ancilla)
      : n_data_(n_data), use_ancilla_(use_ancilla) {
    if (n_data < 1 || n_data > kMaxDataWires)
      throw DomainError("n_data must be in [1, " +
                        std::to_string(kMaxDataWires) + "], got " +
                        std::to_string(n_data));
    for (int i = 0; i + 1 < n_wires(); ++i)
      blocks_.push_back({i, i + 1});
  }

  int n_data() const noexcept { return n_data_; }
  bool use_ancilla() const noexcept { return use_ancilla_; }
  int n_wires() const noexcept { return n_data_ + (use_ancilla_ ? 1 : 0); }
  int output_wire() const noexcept { return n_wires() - 1; }
  std::span<const Block> blocks() const noexcept { return blocks_; }
  int n_params() const noexcept { return 2 * static_cast<int>(blocks_.size()); }

  std::vector<double> zero_theta() const {
    return std::vector<double>(static_cast<std::size_t>(n_params()), 0.0);
  }

  /// Gate sequence for the given parameters.
  std::vector<Gate> gates(std::span<const double> theta) const {
    check_theta(theta);
    std::vector<Gate> out;
    out.reserve(blocks_.size() * 3);
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const auto &b = blocks_[i];
      out.push_back(Gate::ry(b.low, theta[2 * i]));
      out.push_back(Gate::ry(b.high, theta[2 * i + 1]));
      out.push_back(Gate::cnot(b.low, b.high));
    }
    return out;
  }

  void check_theta(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != n_params())
      throw DomainError("theta has " + std::to_string(theta.size()) +
                        " entries, circuit expects " +
                        std::to_string(n_params()));
  }

  /// Input state on the data wires, with the ancilla prepended if used.
  StateVector full_input(const StateVector &data_state) const {
    if (data_state.n_qubits() != n_data_)
      throw DomainError("input has " + std::to_string(data_state.n_qubits()) +
                        " qubits, circuit expects " + std::to_string(n_data_));
    if (!use_ancilla_)
      return data_state;
    const StateVector parts[] = {init_basis_state(1, 0), data_state};
    return product_state(parts);
  }

private:
  int n_data_;
  bool use_ancilla_;
  std::vector<Block> blocks_;
};

inline StaircaseCircuit build_circuit(int n_data, bool use_ancilla) {
  return StaircaseCircuit(n_data, use_ancilla);
}

/// Score m = P(output wire = 1) = (1 - <Z>) / 2 after running `gates` on
/// `full_state` (all wires, ancilla included).
inline double run_and_read(const StateVector &full_state,
                           std::span<const Gate> gates, int output_wire,
                           Backend backend) {
  double z = 0.0;
  if (backend == Backend::Dense) {
    z = expectation_z(apply_gates(full_state, gates), output_wire);
  } else {
    MpsState mps = from_statevector(full_state);
    for (const auto &g : gates)
      mps = apply_gate_mps(mps, g);
    z = expectation_z_mps(mps, output_wire);
  }
  return std::clamp((1.0 - z) / 2.0, 0.0, 1.0);
}

inline double evaluate(const StaircaseCircuit &circuit,
                       std::span<const double> theta, const StateVector &input,
                       Backend backend = Backend::Dense) {
  const auto gates = circuit.gates(theta);
  return run_and_read(circuit.full_input(input), gates, circuit.output_wire(),
                      backend);
}

/// Scores for a batch, in input order.
inline std::vector<double> evaluate_batch(const StaircaseCircuit &circuit,
                                          std::span<const double> theta,
                                          std::span<const StateVector> inputs,
                                          Backend backend = Backend::Dense) {
  const auto gates = circuit.gates(theta);
  std::vector<double> out;
  out.reserve(inputs.size());
  for (const auto &in : inputs)
    out.push_back(run_and_read(circuit.full_input(in), gates,
                               circuit.output_wire(), backend));
  return out;
}

/// Label 1 iff m >= 0.5.
inline int label_from_score(double m) noexcept { return m >= 0.5 ? 1 : 0; }

/// Which source classes became binary labels 0 and 1.
struct ClassMapping {
  int negative_id = 0;
  int positive_id = 1;
  std::string negative_name;
  std::string positive_name;
};

struct TrainedModel {
  StaircaseCircuit circuit{1, false};
  std::vector<double> theta;
  NormalizationBounds bounds;
  ClassMapping classes;
  std::string task_name;
  std::vector<std::string> feature_names;
  /// Training cost per iteration for the selected restart, initial cost first.
  std::vector<double> history;
  /// Final training cost of every restart, in restart order.
  std::vector<double> restart_costs;
  int best_restart = 0;
};

struct Prediction {
  int label;
  double score;
};

inline Prediction predict(const TrainedModel &model,
                          std::span<const double> raw_row,
                          Backend backend = Backend::Dense) {
  if (static_cast<int>(raw_row.size()) != model.circuit.n_data())
    throw DomainError("predict: row has " + std::to_string(raw_row.size()) +
                      " features, model expects " +
                      std::to_string(model.circuit.n_data()));
  const auto angles = normalize(raw_row, model.bounds);
  const double m =
      evaluate(model.circuit, model.theta, encode_sample(angles), backend);
  return {label_from_score(m), m};
}

} // namespace mpsqc
