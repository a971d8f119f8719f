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
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mpsqc/ansatz.hpp"
#include "mpsqc/encoding.hpp"
#include "mpsqc/error.hpp"

namespace mpsqc {

enum class Optimizer { CG, SGD };
enum class GradientMode { ParameterShift, FiniteDifference };

inline std::string to_string(Optimizer o) {
  return o == Optimizer::CG ? "cg" : "sgd";
}

inline Optimizer optimizer_from_string(const std::string &s) {
  if (s == "cg")
    return Optimizer::CG;
  if (s == "sgd")
    return Optimizer::SGD;
  throw DomainError("unknown optimizer '" + s + "' (expected cg or sgd)");
}

inline std::string to_string(GradientMode g) {
  return g == GradientMode::ParameterShift ? "shift" : "fd";
}

inline GradientMode gradient_mode_from_string(const std::string &s) {
  if (s == "shift")
    return GradientMode::ParameterShift;
  if (s == "fd")
    return GradientMode::FiniteDifference;
  throw DomainError("unknown gradient mode '" + s + "' (expected shift or fd)");
}

struct TrainConfig {
  Optimizer optimizer = Optimizer::CG;
  int max_iters = 200;
  double grad_tol = 1e-5;
  double learning_rate = 0.1; // SGD
  int batch_size = 16;        // SGD
  GradientMode gradient_mode = GradientMode::ParameterShift;
  double fd_step = 1e-4;
  std::uint64_t seed = 0;
  int restarts = 3;
  Backend backend = Backend::Dense;

  // Armijo backtracking for CG.
  double armijo_c = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  int max_backtracks = 40;

  void validate() const {
    if (max_iters < 1)
      throw DomainError("max_iters must be >= 1");
    if (!(grad_tol > 0.0))
      throw DomainError("grad_tol must be > 0");
    if (restarts < 1)
      throw DomainError("restarts must be >= 1");
    if (optimizer == Optimizer::SGD) {
      if (!(learning_rate > 0.0))
        throw DomainError("learning_rate must be > 0 for SGD");
      if (batch_size < 1)
        throw DomainError("batch_size must be >= 1 for SGD");
    }
    if (gradient_mode == GradientMode::FiniteDifference && !(fd_step > 0.0))
      throw DomainError("finite-difference step must be > 0");
  }
};

/// Encoded states paired with their labels; built once per training run.
struct PreparedData {
  std::vector<StateVector> states;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
};

inline PreparedData prepare(std::span<const EncodedSample> samples) {
  if (samples.empty())
    throw DomainError("dataset is empty");
  PreparedData out;
  out.states.reserve(samples.size());
  out.labels.reserve(samples.size());
  for (const auto &s : samples) {
    if (s.label != 0 && s.label != 1)
      throw DomainError("labels must be 0 or 1");
    out.states.push_back(encode_sample(s.angles));
    out.labels.push_back(s.label);
  }
  return out;
}

namespace detail {

inline double mean_squared_residual(std::span<const double> m,
                                    std::span<const int> y,
                                    std::span<const std::size_t> idx) {
  double acc = 0.0;
  for (std::size_t i : idx) {
    const double r = m[i] - y[i];
    acc += r * r;
  }
  return acc / static_cast<double>(idx.size());
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

inline std::vector<double> scores_for(const StaircaseCircuit &circuit,
                                      std::span<const double> theta,
                                      const PreparedData &data,
                                      std::span<const std::size_t> idx,
                                      Backend backend) {
  const auto gates = circuit.gates(theta);
  std::vector<double> m(data.size(), 0.0);
  for (std::size_t i : idx)
    m[i] = run_and_read(circuit.full_input(data.states[i]), gates,
                        circuit.output_wire(), backend);
  return m;
}

inline double cost_on(const StaircaseCircuit &circuit,
                      std::span<const double> theta, const PreparedData &data,
                      std::span<const std::size_t> idx, Backend backend) {
  const auto m = scores_for(circuit, theta, data, idx, backend);
  return mean_squared_residual(m, data.labels, idx);
}

/// dJ/dtheta on the samples in idx. Parameter shift uses
/// dm/dtheta_k = (m(theta_k + pi/2) - m(theta_k - pi/2)) / 2, exact because
/// each parameter feeds a single RY gate.
inline std::vector<double> gradient_on(const StaircaseCircuit &circuit,
                                       std::span<const double> theta,
                                       const PreparedData &data,
                                       std::span<const std::size_t> idx,
                                       const TrainConfig &cfg) {
  const std::size_t p = theta.size();
  std::vector<double> grad(p, 0.0);
  if (p == 0)
    return grad;
  const double inv_d = 1.0 / static_cast<double>(idx.size());
  std::vector<double> shifted(theta.begin(), theta.end());

  if (cfg.gradient_mode == GradientMode::FiniteDifference) {
    const double h = cfg.fd_step;
    for (std::size_t k = 0; k < p; ++k) {
      shifted[k] = theta[k] + h;
      const double jp = cost_on(circuit, shifted, data, idx, cfg.backend);
      shifted[k] = theta[k] - h;
      const double jm = cost_on(circuit, shifted, data, idx, cfg.backend);
      shifted[k] = theta[k];
      grad[k] = (jp - jm) / (2.0 * h);
    }
    return grad;
  }

  constexpr double shift = std::numbers::pi / 2.0;
  const auto m = scores_for(circuit, theta, data, idx, cfg.backend);
  for (std::size_t k = 0; k < p; ++k) {
    shifted[k] = theta[k] + shift;
    const auto mp = scores_for(circuit, shifted, data, idx, cfg.backend);
    shifted[k] = theta[k] - shift;
    const auto mm = scores_for(circuit, shifted, data, idx, cfg.backend);
    shifted[k] = theta[k];
    double acc = 0.0;
    for (std::size_t i : idx)
      acc += (m[i] - data.labels[i]) * (mp[i] - mm[i]) / 2.0;
    grad[k] = 2.0 * inv_d * acc;
  }
  return grad;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += a[i] * b[i];
  return acc;
}

inline double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v)
    m = std::max(m, std::abs(x));
  return m;
}

inline void check_finite(double j, int iteration) {
  if (!std::isfinite(j))
    throw NumericalError("non-finite training cost", iteration);
}

struct RunResult {
  std::vector<double> theta;
  std::vector<double> history;
};

/// Polak-Ribiere+ conjugate gradient with Armijo backtracking.
inline RunResult run_cg(const StaircaseCircuit &circuit,
                        std::vector<double> theta, const PreparedData &data,
                        const TrainConfig &cfg) {
  const auto idx = all_indices(data.size());
  double j = cost_on(circuit, theta, data, idx, cfg.backend);
  check_finite(j, 0);
  RunResult out{theta, {j}};
  auto g = gradient_on(circuit, theta, data, idx, cfg);
  std::vector<double> d(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    d[k] = -g[k];

  std::vector<double> trial(theta.size());
  for (int it = 1; it <= cfg.max_iters; ++it) {
    if (inf_norm(g) < cfg.grad_tol)
      break;
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      for (std::size_t k = 0; k < g.size(); ++k)
        d[k] = -g[k];
      slope = dot(g, d);
    }

    double step = cfg.initial_step;
    double j_new = j;
    bool accepted = false;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      for (std::size_t k = 0; k < theta.size(); ++k)
        trial[k] = theta[k] + step * d[k];
      j_new = cost_on(circuit, trial, data, idx, cfg.backend);
      check_finite(j_new, it);
      if (j_new <= j + cfg.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted)
      break;

    auto g_new = gradient_on(circuit, trial, data, idx, cfg);
    const double gg = dot(g, g);
    double beta = 0.0;
    if (gg > 0.0) {
      double num = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k)
        num += g_new[k] * (g_new[k] - g[k]);
      beta = std::max(0.0, num / gg);
    }
    for (std::size_t k = 0; k < d.size(); ++k)
      d[k] = -g_new[k] + beta * d[k];

    theta = trial;
    j = j_new;
    g = std::move(g_new);
    out.history.push_back(j);
  }
  out.theta = std::move(theta);
  return out;
}

/// Mini-batch SGD; one iteration is one shuffled epoch. Returns the
/// best-seen parameters if the final epoch ends above the initial cost.
inline RunResult run_sgd(const StaircaseCircuit &circuit,
                         std::vector<double> theta, const PreparedData &data,
                         const TrainConfig &cfg, std::mt19937_64 &rng) {
  auto order = all_indices(data.size());
  const auto idx = all_indices(data.size());
  double j = cost_on(circuit, theta, data, idx, cfg.backend);
  check_finite(j, 0);
  RunResult out{theta, {j}};
  const double j0 = j;
  double best_j = j;
  std::vector<double> best_theta = theta;

  const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
  for (int epoch = 1; epoch <= cfg.max_iters; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::size_t stop = std::min(order.size(), start + bs);
      std::span<const std::size_t> batch(order.data() + start, stop - start);
      const auto g = gradient_on(circuit, theta, data, batch, cfg);
      for (std::size_t k = 0; k < theta.size(); ++k)
        theta[k] -= cfg.learning_rate * g[k];
    }
    j = cost_on(circuit, theta, data, idx, cfg.backend);
    check_finite(j, epoch);
    out.history.push_back(j);
    if (j < best_j) {
      best_j = j;
      best_theta = theta;
    }
    if (inf_norm(gradient_on(circuit, theta, data, idx, cfg)) < cfg.grad_tol)
      break;
  }
  if (j > j0) {
    out.history.push_back(best_j);
    out.theta = std::move(best_theta);
  } else {
    out.theta = std::move(theta);
  }
  return out;
}

} // namespace detail

/// Mean squared difference between scores and labels over the dataset.
inline double cost(const StaircaseCircuit &circuit,
                   std::span<const double> theta,
                   std::span<const EncodedSample> dataset,
                   Backend backend = Backend::Dense) {
  const auto data = prepare(dataset);
  const auto idx = detail::all_indices(data.size());
  return detail::cost_on(circuit, theta, data, idx, backend);
}

inline std::vector<double> gradient(const StaircaseCircuit &circuit,
                                    std::span<const double> theta,
                                    std::span<const EncodedSample> dataset,
                                    const TrainConfig &cfg = {}) {
  circuit.check_theta(theta);
  const auto data = prepare(dataset);
  const auto idx = detail::all_indices(data.size());
  return detail::gradient_on(circuit, theta, data, idx, cfg);
}

/// Trains from `config.restarts` uniform [-pi, pi) starts drawn from
/// `config.seed` and keeps the restart with the lowest final training cost.
/// The returned model carries circuit, theta and history only.
inline TrainedModel train(const StaircaseCircuit &circuit,
                          std::span<const EncodedSample> dataset,
                          const TrainConfig &config) {
  config.validate();
  const auto data = prepare(dataset);
  for (const auto &s : dataset)
    if (static_cast<int>(s.angles.size()) != circuit.n_data())
      throw DomainError("sample has " + std::to_string(s.angles.size()) +
                        " features, circuit expects " +
                        std::to_string(circuit.n_data()));

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> init(-std::numbers::pi,
                                              std::numbers::pi);
  TrainedModel model;
  model.circuit = circuit;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    std::vector<double> theta0(static_cast<std::size_t>(circuit.n_params()));
    for (auto &t : theta0)
      t = init(rng);
    auto run = config.optimizer == Optimizer::CG
                   ? detail::run_cg(circuit, std::move(theta0), data, config)
                   : detail::run_sgd(circuit, std::move(theta0), data, config,
                                     rng);
    const double final_cost = run.history.back();
    model.restart_costs.push_back(final_cost);
    if (final_cost < best) {
      best = final_cost;
      model.theta = std::move(run.theta);
      model.history = std::move(run.history);
      model.best_restart = r;
    }
  }
  return model;
}

} // namespace mpsqc
