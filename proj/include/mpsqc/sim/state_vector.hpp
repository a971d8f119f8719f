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
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpsqc/error.hpp"
#include "mpsqc/sim/gate.hpp"

namespace mpsqc {

/// Largest register the dense simulator will allocate.
inline constexpr int kMaxQubits = 24;

/// Dense pure state over n qubits. Wire 0 is the most significant bit of
/// the basis index, so |q0 q1 ... q(n-1)> sits at index sum q_k 2^(n-1-k).
class StateVector {
public:
  static constexpr double kNormTolerance = 1e-10;

  /// Wraps amplitudes; the length must be a power of two and the norm 1.
  static StateVector from_amplitudes(std::vector<Complex> amps) {
    const std::size_t len = amps.size();
    if (len < 2 || (len & (len - 1)) != 0)
      throw DomainError("amplitude count must be a power of two >= 2, got " +
                        std::to_string(len));
    int n = 0;
    while ((std::size_t{1} << n) < len)
      ++n;
    if (n > kMaxQubits)
      throw ResourceError("state exceeds " + std::to_string(kMaxQubits) +
                          " qubits");
    StateVector s(n, std::move(amps));
    if (std::abs(s.norm() - 1.0) > kNormTolerance)
      throw DomainError("state is not normalized (norm " +
                        std::to_string(s.norm()) + ")");
    return s;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double acc = 0.0;
    for (const auto &a : amps_)
      acc += std::norm(a);
    return std::sqrt(acc);
  }

private:
  StateVector(int n, std::vector<Complex> amps)
      : n_qubits_(n), amps_(std::move(amps)) {}

  friend StateVector init_basis_state(int, std::uint64_t);
  friend StateVector apply_gate(const StateVector &, const Gate &);
  friend StateVector product_state(std::span<const StateVector>);

  int n_qubits_;
  std::vector<Complex> amps_;
};

inline StateVector init_basis_state(int n_qubits, std::uint64_t basis_index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw DomainError("qubit count must be in [1, " +
                      std::to_string(kMaxQubits) + "], got " +
                      std::to_string(n_qubits));
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (basis_index >= dim)
    throw DomainError("basis index " + std::to_string(basis_index) +
                      " out of range for " + std::to_string(n_qubits) +
                      " qubits");
  std::vector<Complex> amps(dim, 0.0);
  amps[basis_index] = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

namespace detail {

inline std::uint64_t wire_mask(int n_qubits, int wire) {
  return std::uint64_t{1} << (n_qubits - 1 - wire);
}

inline void check_wire(int n_qubits, int wire) {
  if (wire < 0 || wire >= n_qubits)
    throw DomainError("wire " + std::to_string(wire) + " out of range for " +
                      std::to_string(n_qubits) + " qubits");
}

} // namespace detail

/// Returns U_gate applied to `state` on the gate's wires.
inline StateVector apply_gate(const StateVector &state, const Gate &gate) {
  const int n = state.n_qubits();
  for (int w : gate.wires())
    detail::check_wire(n, w);

  std::vector<Complex> out(state.amps_);
  const std::uint64_t dim = out.size();
  if (gate.arity() == 1) {
    const std::uint64_t m = detail::wire_mask(n, gate.wires()[0]);
    const Complex u00 = gate.at(0, 0), u01 = gate.at(0, 1);
    const Complex u10 = gate.at(1, 0), u11 = gate.at(1, 1);
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & m)
        continue;
      const Complex a0 = state.amps_[i];
      const Complex a1 = state.amps_[i | m];
      out[i] = u00 * a0 + u01 * a1;
      out[i | m] = u10 * a0 + u11 * a1;
    }
  } else {
    const std::uint64_t m0 = detail::wire_mask(n, gate.wires()[0]);
    const std::uint64_t m1 = detail::wire_mask(n, gate.wires()[1]);
    for (std::uint64_t i = 0; i < dim; ++i) {
      if (i & (m0 | m1))
        continue;
      const std::uint64_t idx[4] = {i, i | m1, i | m0, i | m0 | m1};
      Complex in[4];
      for (int k = 0; k < 4; ++k)
        in[k] = state.amps_[idx[k]];
      for (int r = 0; r < 4; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < 4; ++c)
          acc += gate.at(r, c) * in[c];
        out[idx[r]] = acc;
      }
    }
  }
  return StateVector(n, std::move(out));
}

/// Applies gates in order.
inline StateVector apply_gates(StateVector state, std::span<const Gate> gates) {
  for (const auto &g : gates)
    state = apply_gate(state, g);
  return state;
}

/// Kronecker product of the factors; factors[0] becomes wire 0.
inline StateVector product_state(std::span<const StateVector> factors) {
  if (factors.empty())
    throw DomainError("product_state needs at least one factor");
  int n = 0;
  for (const auto &f : factors)
    n += f.n_qubits();
  if (n > kMaxQubits)
    throw ResourceError("product state exceeds " + std::to_string(kMaxQubits) +
                        " qubits");
  std::vector<Complex> acc{1.0};
  for (const auto &f : factors) {
    std::vector<Complex> next;
    next.reserve(acc.size() * f.size());
    for (const auto &a : acc)
      for (const auto &b : f.amps_)
        next.push_back(a * b);
    acc = std::move(next);
  }
  return StateVector(n, std::move(acc));
}

/// <Z> on `wire`: +1 weight where the wire's bit is 0, -1 where it is 1.
inline double expectation_z(const StateVector &state, int wire) {
  detail::check_wire(state.n_qubits(), wire);
  const std::uint64_t m = detail::wire_mask(state.n_qubits(), wire);
  double acc = 0.0;
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    acc += (i & m) ? -std::norm(amps[i]) : std::norm(amps[i]);
  return acc;
}

inline Complex inner_product(const StateVector &a, const StateVector &b) {
  if (a.size() != b.size())
    throw DomainError("inner_product: dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += std::conj(a[i]) * b[i];
  return acc;
}

} // namespace mpsqc
