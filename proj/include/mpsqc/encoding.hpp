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
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mpsqc/error.hpp"
#include "mpsqc/sim/state_vector.hpp"

namespace mpsqc {

/// Per-feature min/max learned from a training split.
struct NormalizationBounds {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t size() const noexcept { return min.size(); }

  /// A feature whose training values were all equal; it normalizes to 0.
  bool is_constant(std::size_t j) const { return !(max.at(j) > min.at(j)); }

  std::vector<std::size_t> constant_features() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
      if (is_constant(j))
        out.push_back(j);
    return out;
  }
};

/// Normalized feature angles with a binary label.
struct EncodedSample {
  std::vector<double> angles;
  int label = 0;
};

inline NormalizationBounds fit_bounds(std::span<const std::vector<double>> rows) {
  if (rows.empty())
    throw DomainError("fit_bounds: no rows");
  const std::size_t width = rows.front().size();
  if (width == 0)
    throw DomainError("fit_bounds: rows have no features");
  NormalizationBounds b{rows.front(), rows.front()};
  for (const auto &row : rows) {
    if (row.size() != width)
      throw DomainError("fit_bounds: ragged feature matrix");
    for (std::size_t j = 0; j < width; ++j) {
      if (!std::isfinite(row[j]))
        throw DomainError("fit_bounds: non-finite value in feature " +
                          std::to_string(j));
      b.min[j] = std::min(b.min[j], row[j]);
      b.max[j] = std::max(b.max[j], row[j]);
    }
  }
  return b;
}

/// Affine map of [min, max] onto [-pi, pi], clamped for unseen values.
inline std::vector<double> normalize(std::span<const double> row,
                                     const NormalizationBounds &bounds) {
  if (row.size() != bounds.size())
    throw DomainError("normalize: row has " + std::to_string(row.size()) +
                      " features, bounds have " +
                      std::to_string(bounds.size()));
  constexpr double pi = std::numbers::pi;
  std::vector<double> out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (bounds.is_constant(j)) {
      out[j] = 0.0;
      continue;
    }
    const double t = (row[j] - bounds.min[j]) / (bounds.max[j] - bounds.min[j]);
    out[j] = std::clamp(-pi + 2.0 * pi * t, -pi, pi);
  }
  return out;
}

/// cos(x)|0> + sin(x)|1>, i.e. RY(2x)|0>.
inline StateVector encode_feature(double x) {
  if (!std::isfinite(x))
    throw DomainError("encode_feature: angle must be finite");
  return StateVector::from_amplitudes({std::cos(x), std::sin(x)});
}

inline StateVector encode_sample(std::span<const double> angles) {
  if (angles.empty())
    throw DomainError("encode_sample: empty angle vector");
  std::vector<StateVector> factors;
  factors.reserve(angles.size());
  for (double x : angles)
    factors.push_back(encode_feature(x));
  return product_state(factors);
}

} // namespace mpsqc
