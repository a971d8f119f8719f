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

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "mpsqc/error.hpp"

namespace mpsqc {

using Complex = std::complex<double>;

enum class GateKind { RY, CNOT, Generic1Q, Generic2Q };

/// A one- or two-qubit gate bound to specific wires.
///
/// The matrix is stored row-major over the gate's local basis; the first
/// listed wire is the most significant local bit, matching the global
/// convention that wire 0 is the most significant bit of a basis index.
/// RY(t) = exp(-i t Y / 2) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].
class Gate {
public:
  static constexpr double kUnitaryTolerance = 1e-10;

  static Gate ry(int wire, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    Gate g(GateKind::RY, {wire}, {c, -s, s, c});
    g.angle_ = angle;
    return g;
  }

  static Gate cnot(int control, int target) {
    return Gate(GateKind::CNOT, {control, target},
                {1, 0, 0, 0, //
                 0, 1, 0, 0, //
                 0, 0, 0, 1, //
                 0, 0, 1, 0});
  }

  static Gate unitary(int wire, const std::array<Complex, 4> &m) {
    Gate g(GateKind::Generic1Q, {wire}, std::vector<Complex>(m.begin(), m.end()));
    g.check_unitary();
    return g;
  }

  static Gate unitary(int wire0, int wire1, const std::array<Complex, 16> &m) {
    Gate g(GateKind::Generic2Q, {wire0, wire1},
           std::vector<Complex>(m.begin(), m.end()));
    g.check_unitary();
    return g;
  }

  GateKind kind() const noexcept { return kind_; }
  int arity() const noexcept { return static_cast<int>(wires_.size()); }
  std::span<const int> wires() const noexcept { return wires_; }
  /// Rotation angle; only meaningful for RY.
  double angle() const noexcept { return angle_; }
  std::span<const Complex> matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return 1 << arity(); }

  Complex at(int row, int col) const { return matrix_[row * dim() + col]; }

private:
  Gate(GateKind kind, std::vector<int> wires, std::vector<Complex> matrix)
      : kind_(kind), wires_(std::move(wires)), matrix_(std::move(matrix)) {
    for (int w : wires_) {
      if (w < 0)
        throw DomainError("gate wire index must be non-negative, got " +
                          std::to_string(w));
    }
    if (wires_.size() == 2 && wires_[0] == wires_[1])
      throw DomainError("two-qubit gate wires collide on wire " +
                        std::to_string(wires_[0]));
  }

  void check_unitary() const {
    const int d = dim();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Complex acc = 0;
        for (int k = 0; k < d; ++k)
          acc += std::conj(at(k, i)) * at(k, j);
        const Complex expected = (i == j) ? 1.0 : 0.0;
        if (std::abs(acc - expected) > kUnitaryTolerance)
          throw ValidationError("gate matrix is not unitary (U^dag U deviates "
                                "from identity at (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                "))");
      }
    }
  }

  GateKind kind_;
  std::vector<int> wires_;
  std::vector<Complex> matrix_;
  double angle_ = 0.0;
};

} // namespace mpsqc
