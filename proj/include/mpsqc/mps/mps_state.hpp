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
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mpsqc/error.hpp"
#include "mpsqc/sim/gate.hpp"
#include "mpsqc/sim/state_vector.hpp"

namespace mpsqc {

/// Open-boundary matrix product state.
///
/// Site k holds two matrices A_k[0], A_k[1] of shape (chi_{k-1}, chi_k) with
/// chi_0 = chi_L = 1, so an amplitude is the 1x1 product
/// A_0[s_0] A_1[s_1] ... A_{L-1}[s_{L-1}].
class MpsState {
public:
  using Matrix = Eigen::MatrixXcd;
  using Site = std::array<Matrix, 2>;

  /// Relative singular-value cutoff applied to every split.
  static constexpr double kSvdCutoff = 1e-12;

  MpsState(std::vector<Site> sites, std::optional<int> max_bond)
      : sites_(std::move(sites)), max_bond_(max_bond) {
    if (sites_.empty())
      throw DomainError("MPS needs at least one site");
    if (max_bond_ && *max_bond_ < 1)
      throw DomainError("max_bond must be >= 1");
    if (sites_.front()[0].rows() != 1 || sites_.back()[0].cols() != 1)
      throw DomainError("MPS boundary bond dimensions must be 1");
    for (std::size_t k = 0; k < sites_.size(); ++k) {
      const auto &s = sites_[k];
      if (s[0].rows() != s[1].rows() || s[0].cols() != s[1].cols())
        throw DomainError("site " + std::to_string(k) +
                          " has mismatched physical slices");
      if (k + 1 < sites_.size() && s[0].cols() != sites_[k + 1][0].rows())
        throw DomainError("bond mismatch between sites " + std::to_string(k) +
                          " and " + std::to_string(k + 1));
    }
  }

  int length() const noexcept { return static_cast<int>(sites_.size()); }
  std::optional<int> max_bond() const noexcept { return max_bond_; }
  const Site &site(int k) const { return sites_.at(k); }

  /// Interior bond dimensions chi_1 ... chi_{L-1}.
  std::vector<int> bond_dims() const {
    std::vector<int> out;
    for (std::size_t k = 0; k + 1 < sites_.size(); ++k)
      out.push_back(static_cast<int>(sites_[k][0].cols()));
    return out;
  }

  int max_bond_dim() const {
    int m = 1;
    for (int d : bond_dims())
      m = std::max(m, d);
    return m;
  }

private:
  friend MpsState apply_gate_mps(const MpsState &, const Gate &,
                                 std::optional<int>);

  std::vector<Site> sites_;
  std::optional<int> max_bond_;
};

namespace detail {

inline int kept_rank(const Eigen::VectorXd &sv, std::optional<int> max_bond) {
  if (sv.size() == 0 || sv(0) <= 0.0)
    return 1;
  const double floor = MpsState::kSvdCutoff * sv(0);
  int keep = 0;
  while (keep < sv.size() && sv(keep) > floor)
    ++keep;
  keep = std::max(keep, 1);
  if (max_bond)
    keep = std::min(keep, *max_bond);
  return keep;
}

/// Left-to-right transfer contraction of <psi| O |psi>, where O is Z on
/// `z_wire` (or identity everywhere when z_wire < 0).
inline double transfer_expectation(const MpsState &state, int z_wire) {
  MpsState::Matrix env = MpsState::Matrix::Ones(1, 1);
  for (int k = 0; k < state.length(); ++k) {
    const auto &s = state.site(k);
    const double w1 = (k == z_wire) ? -1.0 : 1.0;
    env = (s[0].adjoint() * env * s[0] + w1 * (s[1].adjoint() * env * s[1]))
              .eval();
  }
  return env(0, 0).real();
}

} // namespace detail

/// Squared norm <psi|psi> by transfer-matrix contraction.
inline double norm_squared(const MpsState &state) {
  return detail::transfer_expectation(state, -1);
}

/// Amplitude of a basis state; bits[k] is the value of wire k.
inline Complex amplitude(const MpsState &state, std::span<const int> bits) {
  if (static_cast<int>(bits.size()) != state.length())
    throw DomainError("amplitude: expected " + std::to_string(state.length()) +
                      " bits, got " + std::to_string(bits.size()));
  MpsState::Matrix acc = MpsState::Matrix::Ones(1, 1);
  for (int k = 0; k < state.length(); ++k) {
    if (bits[k] != 0 && bits[k] != 1)
      throw DomainError("amplitude: bit values must be 0 or 1");
    acc = (acc * state.site(k)[bits[k]]).eval();
  }
  return acc(0, 0);
}

/// Amplitude addressed by a string such as "0110".
inline Complex amplitude(const MpsState &state, std::string_view bits) {
  std::vector<int> b;
  b.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw DomainError("amplitude: bit string may only contain '0' and '1'");
    b.push_back(c - '0');
  }
  return amplitude(state, b);
}

/// Decomposes a dense state by successive SVDs from the left. Kept singular
/// values are renormalized whenever truncation drops weight.
inline MpsState from_statevector(const StateVector &state,
                                 std::optional<int> max_bond = std::nullopt) {
  if (max_bond && *max_bond < 1)
    throw DomainError("max_bond must be >= 1, got " +
                      std::to_string(*max_bond));
  const int n = state.n_qubits();
  const auto amps = state.amplitudes();

  // rest(a, r): left bond index a, remaining wires flattened into r.
  MpsState::Matrix rest(1, static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i)
    rest(0, static_cast<Eigen::Index>(i)) = amps[i];

  std::vector<MpsState::Site> sites;
  sites.reserve(n);
  for (int k = 0; k < n - 1; ++k) {
    const Eigen::Index chi_l = rest.rows();
    const Eigen::Index half = rest.cols() / 2;
    MpsState::Matrix m(chi_l * 2, half);
    for (Eigen::Index a = 0; a < chi_l; ++a)
      for (int s = 0; s < 2; ++s)
        m.row(a * 2 + s) = rest.row(a).segment(s * half, half);

    Eigen::JacobiSVD<MpsState::Matrix> svd(m, Eigen::ComputeThinU |
                                                  Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const int keep = detail::kept_rank(sv, max_bond);
    Eigen::VectorXd s_kept = sv.head(keep);
    if (keep < sv.size())
      s_kept /= s_kept.norm();

    MpsState::Site site{MpsState::Matrix(chi_l, keep),
                        MpsState::Matrix(chi_l, keep)};
    for (Eigen::Index a = 0; a < chi_l; ++a)
      for (int s = 0; s < 2; ++s)
        site[s].row(a) = svd.matrixU().row(a * 2 + s).head(keep);
    sites.push_back(std::move(site));

    rest = s_kept.asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  }

  const Eigen::Index chi_l = rest.rows();
  MpsState::Site last{MpsState::Matrix(chi_l, 1), MpsState::Matrix(chi_l, 1)};
  for (int s = 0; s < 2; ++s)
    last[s].col(0) = rest.col(s);
  sites.push_back(std::move(last));
  return MpsState(std::move(sites), max_bond);
}

/// Full contraction back to a dense vector.
inline StateVector to_statevector(const MpsState &state) {
  if (state.length() > kMaxQubits)
    throw ResourceError("to_statevector: " + std::to_string(state.length()) +
                        " sites exceed the dense limit of " +
                        std::to_string(kMaxQubits));
  // Rows enumerate the prefix bits (wire 0 most significant).
  MpsState::Matrix prefix = MpsState::Matrix::Ones(1, 1);
  for (int k = 0; k < state.length(); ++k) {
    const auto &s = state.site(k);
    MpsState::Matrix next(prefix.rows() * 2, s[0].cols());
    for (Eigen::Index p = 0; p < prefix.rows(); ++p)
      for (int b = 0; b < 2; ++b)
        next.row(p * 2 + b) = prefix.row(p) * s[b];
    prefix = std::move(next);
  }
  std::vector<Complex> amps(static_cast<std::size_t>(prefix.rows()));
  for (Eigen::Index i = 0; i < prefix.rows(); ++i)
    amps[static_cast<std::size_t>(i)] = prefix(i, 0);
  return StateVector::from_amplitudes(std::move(amps));
}

/// Applies a one-qubit gate, or a two-qubit gate on adjacent wires, to the
/// chain. Two-qubit gates merge the pair, apply the 4x4 matrix and split
/// again by SVD, truncating to `max_bond` (or the state's own cap).
inline MpsState apply_gate_mps(const MpsState &state, const Gate &gate,
                               std::optional<int> max_bond = std::nullopt) {
  using Matrix = MpsState::Matrix;
  const int n = state.length();
  for (int w : gate.wires())
    detail::check_wire(n, w);
  if (max_bond && *max_bond < 1)
    throw DomainError("max_bond must be >= 1");
  const std::optional<int> cap = max_bond ? max_bond : state.max_bond();

  MpsState out = state;
  if (gate.arity() == 1) {
    auto &site = out.sites_[gate.wires()[0]];
    const auto &in = state.sites_[gate.wires()[0]];
    for (int s = 0; s < 2; ++s)
      site[s] = gate.at(s, 0) * in[0] + gate.at(s, 1) * in[1];
    return out;
  }

  const int w0 = gate.wires()[0];
  const int w1 = gate.wires()[1];
  if (std::abs(w0 - w1) != 1)
    throw UnsupportedTopologyError(
        "MPS backend only supports two-qubit gates on adjacent wires, got (" +
        std::to_string(w0) + "," + std::to_string(w1) + ")");

  // Matrix in (left site, right site) order.
  const int lo = std::min(w0, w1);
  const bool swapped = w0 > w1;
  auto u = [&](int r, int c) {
    if (!swapped)
      return gate.at(r, c);
    auto flip = [](int x) { return ((x & 1) << 1) | (x >> 1); };
    return gate.at(flip(r), flip(c));
  };

  const auto &left = state.sites_[lo];
  const auto &right = state.sites_[lo + 1];
  const Eigen::Index chi_l = left[0].rows();
  const Eigen::Index chi_r = right[0].cols();

  std::array<Matrix, 4> theta;
  for (int s = 0; s < 4; ++s)
    theta[s] = left[s >> 1] * right[s & 1];
  std::array<Matrix, 4> evolved;
  for (int r = 0; r < 4; ++r) {
    evolved[r] = Matrix::Zero(chi_l, chi_r);
    for (int c = 0; c < 4; ++c) {
      const Complex coeff = u(r, c);
      if (coeff != Complex(0.0))
        evolved[r] += coeff * theta[c];
    }
  }

  // Rows (a, s_left), columns (s_right, c).
  Matrix merged(chi_l * 2, chi_r * 2);
  for (Eigen::Index a = 0; a < chi_l; ++a)
    for (int sl = 0; sl < 2; ++sl)
      for (int sr = 0; sr < 2; ++sr)
        merged.row(a * 2 + sl).segment(sr * chi_r, chi_r) =
            evolved[sl * 2 + sr].row(a);

  Eigen::JacobiSVD<Matrix> svd(merged,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto &sv = svd.singularValues();
  const int keep = detail::kept_rank(sv, cap);
  const Eigen::VectorXd s_kept = sv.head(keep);
  const Matrix sv_right =
      s_kept.asDiagonal() * svd.matrixV().leftCols(keep).adjoint();

  MpsState::Site new_left{Matrix(chi_l, keep), Matrix(chi_l, keep)};
  MpsState::Site new_right{Matrix(keep, chi_r), Matrix(keep, chi_r)};
  for (Eigen::Index a = 0; a < chi_l; ++a)
    for (int sl = 0; sl < 2; ++sl)
      new_left[sl].row(a) = svd.matrixU().row(a * 2 + sl).head(keep);
  for (int sr = 0; sr < 2; ++sr)
    new_right[sr] = sv_right.middleCols(sr * chi_r, chi_r);

  out.sites_[lo] = std::move(new_left);
  out.sites_[lo + 1] = std::move(new_right);

  if (keep < sv.size()) {
    const double nrm = std::sqrt(norm_squared(out));
    for (auto &m : out.sites_[lo + 1])
      m /= nrm;
  }
  return out;
}

/// <Z> on `wire`, contracted without densifying.
inline double expectation_z_mps(const MpsState &state, int wire) {
  detail::check_wire(state.length(), wire);
  return detail::transfer_expectation(state, wire) / norm_squared(state);
}

} // namespace mpsqc
