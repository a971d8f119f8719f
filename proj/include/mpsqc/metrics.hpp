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
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mpsqc/error.hpp"

namespace mpsqc {

/// Confusion counts with class 1 as the positive class.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  std::int64_t total() const noexcept { return tp + tn + fp + fn; }
  std::int64_t positives() const noexcept { return tp + fn; }
  std::int64_t negatives() const noexcept { return tn + fp; }
};

/// A metric value that may be undefined (zero denominator, single class,
/// constant series). Undefined metrics read as NaN and are never coerced to 0.
class Metric {
public:
  static Metric of(double v) { return Metric(v, true); }
  static Metric undefined() {
    return Metric(std::numeric_limits<double>::quiet_NaN(), false);
  }

  bool defined() const noexcept { return defined_; }
  double value() const noexcept { return value_; }

private:
  Metric(double v, bool d) : value_(v), defined_(d) {}
  double value_;
  bool defined_;
};

inline ConfusionCounts confusion(std::span<const int> actual,
                                 std::span<const int> predicted) {
  if (actual.size() != predicted.size())
    throw DomainError("confusion: length mismatch");
  if (actual.empty())
    throw DomainError("confusion: empty label sequences");
  ConfusionCounts c;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const int a = actual[i], p = predicted[i];
    if ((a != 0 && a != 1) || (p != 0 && p != 1))
      throw DomainError("confusion: labels must be 0 or 1");
    if (a == 1)
      (p == 1 ? c.tp : c.fn)++;
    else
      (p == 1 ? c.fp : c.tn)++;
  }
  return c;
}

/// Percentage of correct predictions.
inline double accuracy(const ConfusionCounts &c) {
  if (c.total() <= 0)
    throw DomainError("accuracy: no samples");
  return 100.0 * static_cast<double>(c.tp + c.tn) /
         static_cast<double>(c.total());
}

inline Metric sensitivity(const ConfusionCounts &c) {
  if (c.positives() == 0)
    return Metric::undefined();
  return Metric::of(static_cast<double>(c.tp) /
                    static_cast<double>(c.positives()));
}

inline Metric specificity(const ConfusionCounts &c) {
  if (c.negatives() == 0)
    return Metric::undefined();
  return Metric::of(static_cast<double>(c.tn) /
                    static_cast<double>(c.negatives()));
}

/// Area under the ROC curve from the rank-sum (Mann-Whitney) statistic;
/// tied scores receive their average rank, so tied pairs count 1/2.
inline Metric auc(std::span<const int> actual, std::span<const double> scores) {
  if (actual.size() != scores.size())
    throw DomainError("auc: length mismatch");
  const std::size_t n = actual.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  double rank_sum_pos = 0.0;
  std::int64_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]])
      ++j;
    // 1-based ranks i+1 .. j share their mean.
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (actual[order[k]] == 1) {
        rank_sum_pos += avg_rank;
        ++n_pos;
      } else if (actual[order[k]] != 0) {
        throw DomainError("auc: labels must be 0 or 1");
      }
    }
    i = j;
  }
  const std::int64_t n_neg = static_cast<std::int64_t>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0)
    return Metric::undefined();
  const double p = static_cast<double>(n_pos);
  const double u = rank_sum_pos - p * (p + 1.0) / 2.0;
  return Metric::of(u / (p * static_cast<double>(n_neg)));
}

/// Gini = 2 AUC - 1.
inline Metric gini(std::span<const int> actual, std::span<const double> scores) {
  const Metric a = auc(actual, scores);
  if (!a.defined())
    return a;
  return Metric::of(2.0 * a.value() - 1.0);
}

/// Statistics behind a Taylor diagram. Standard deviations are population
/// (1/N) values; the correlation is undefined when either series is constant.
struct TaylorStats {
  double stddev_actual = 0.0;
  double stddev_pred = 0.0;
  Metric correlation = Metric::undefined();
  double centered_rmsd = 0.0;

  /// |cRMSD^2 - (sa^2 + sp^2 - 2 sa sp r)|; the r term is 0 when r is
  /// undefined, since then sa * sp = 0.
  double identity_residual() const {
    const double cross = correlation.defined()
                             ? stddev_actual * stddev_pred * correlation.value()
                             : 0.0;
    return std::abs(centered_rmsd * centered_rmsd -
                    (stddev_actual * stddev_actual +
                     stddev_pred * stddev_pred - 2.0 * cross));
  }
};

inline TaylorStats taylor_stats(std::span<const double> actual,
                                std::span<const double> predicted) {
  if (actual.size() != predicted.size())
    throw DomainError("taylor_stats: length mismatch");
  if (actual.size() < 2)
    throw DomainError("taylor_stats: need at least two points");
  const double n = static_cast<double>(actual.size());
  const double mean_a = std::accumulate(actual.begin(), actual.end(), 0.0) / n;
  const double mean_p =
      std::accumulate(predicted.begin(), predicted.end(), 0.0) / n;
  double saa = 0.0, spp = 0.0, sap = 0.0, sdd = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double da = actual[i] - mean_a;
    const double dp = predicted[i] - mean_p;
    saa += da * da;
    spp += dp * dp;
    sap += da * dp;
    sdd += (da - dp) * (da - dp);
  }
  TaylorStats t;
  t.stddev_actual = std::sqrt(saa / n);
  t.stddev_pred = std::sqrt(spp / n);
  t.centered_rmsd = std::sqrt(sdd / n);
  if (saa > 0.0 && spp > 0.0)
    t.correlation =
        Metric::of(std::clamp(sap / std::sqrt(saa * spp), -1.0, 1.0));
  return t;
}

struct SampleRecord {
  int actual;
  double score;
  int predicted;
};

struct EvalReport {
  ConfusionCounts counts;
  double cost = 0.0;
  double acc = 0.0;
  Metric sens = Metric::undefined();
  Metric spec = Metric::undefined();
  Metric gini = Metric::undefined();
  /// Computed on binary actual labels against continuous scores.
  TaylorStats taylor;
  std::vector<SampleRecord> per_sample;
};

/// Builds a report from labels and scores, thresholding scores at 0.5.
inline EvalReport make_report(std::span<const int> actual,
                              std::span<const double> scores) {
  if (actual.size() != scores.size())
    throw DomainError("make_report: length mismatch");
  if (actual.empty())
    throw DomainError("make_report: no samples");
  EvalReport r;
  std::vector<int> predicted(actual.size());
  std::vector<double> actual_real(actual.size());
  double sq = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    predicted[i] = scores[i] >= 0.5 ? 1 : 0;
    actual_real[i] = actual[i];
    const double res = scores[i] - actual[i];
    sq += res * res;
    r.per_sample.push_back({actual[i], scores[i], predicted[i]});
  }
  r.counts = confusion(actual, predicted);
  r.cost = sq / static_cast<double>(actual.size());
  r.acc = accuracy(r.counts);
  r.sens = sensitivity(r.counts);
  r.spec = specificity(r.counts);
  r.gini = gini(actual, scores);
  if (actual.size() >= 2)
    r.taylor = taylor_stats(actual_real, scores);
  return r;
}

} // namespace mpsqc
