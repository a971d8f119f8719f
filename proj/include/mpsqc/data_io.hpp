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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mpsqc/error.hpp"

namespace mpsqc {

enum class Schema { Iris, Agri, Generic };

inline std::string to_string(Schema s) {
  switch (s) {
  case Schema::Iris:
    return "iris";
  case Schema::Agri:
    return "agri";
  default:
    return "generic";
  }
}

inline Schema schema_from_string(const std::string &s) {
  if (s == "iris")
    return Schema::Iris;
  if (s == "agri")
    return Schema::Agri;
  if (s == "generic")
    return Schema::Generic;
  throw DomainError("unknown schema '" + s + "' (expected iris, agri or generic)");
}

/// Agri columns in file order; the first six are the default features.
inline const std::vector<std::string> &agri_columns() {
  static const std::vector<std::string> cols{"Tmin", "Tmax", "RH", "u2",
                                             "Is",   "Rs",   "ETo"};
  return cols;
}

inline std::vector<std::string> default_agri_features() {
  return {agri_columns().begin(), agri_columns().end() - 1};
}

struct IngestionReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  /// Agri rows whose ETo fell outside [0, 6] and was clamped for binning.
  std::size_t eto_clamped = 0;
};

/// Feature matrix with integer class ids (1-based, in order of first
/// appearance for named classes; C1..C3 for agri).
struct RawDataset {
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::map<int, std::string> class_names;
  /// ETo per row for agri data, empty otherwise.
  std::vector<double> target;
  std::string source;
  IngestionReport report;

  std::size_t size() const noexcept { return rows.size(); }

  std::size_t count(int class_id) const {
    return static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), class_id));
  }
};

struct CsvOptions {
  Schema schema = Schema::Generic;
  /// Empty selects the schema default: species (iris), ETo (agri), last
  /// column (generic).
  std::string label_column;
  char delimiter = ',';
  /// Agri feature subset; empty means Tmin, Tmax, RH, u2, Is, Rs.
  std::vector<std::string> features;
};

enum class EtoClass { C1 = 1, C2 = 2, C3 = 3 };

inline bool eto_out_of_range(double eto) { return eto < 0.0 || eto > 6.0; }

/// LOW below 2 mm, MEDIUM in [2, 4), HIGH from 4 mm. Values outside [0, 6]
/// are clamped first (see eto_out_of_range).
inline EtoClass bin_eto(double eto) {
  if (!std::isfinite(eto))
    throw DomainError("bin_eto: ETo must be finite");
  eto = std::clamp(eto, 0.0, 6.0);
  if (eto < 2.0)
    return EtoClass::C1;
  if (eto < 4.0)
    return EtoClass::C2;
  return EtoClass::C3;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '"'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '"'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split_line(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    out.emplace_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

inline bool is_missing(std::string_view cell) {
  return cell.empty() || cell == "?" || cell == "NA" || cell == "NaN" ||
         cell == "nan";
}

inline bool parse_double(std::string_view cell, double &out) {
  if (!cell.empty() && cell.front() == '+')
    cell.remove_prefix(1);
  const auto *end = cell.data() + cell.size();
  const auto res = std::from_chars(cell.data(), end, out);
  return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

} // namespace detail

/// Reads a delimited text file with a header row. Rows with a missing cell
/// are dropped and counted; any other non-numeric feature cell is an error.
/// `path` only labels error messages and the dataset source.
inline RawDataset read_csv(std::istream &in, const std::string &path,
                           const CsvOptions &opts = {}) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::trim(line).empty()) {
      header = detail::split_line(line, opts.delimiter);
      break;
    }
  }
  if (header.empty())
    throw IngestionError(path, 0, "missing header row");

  auto column_of = [&](const std::string &name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw IngestionError(path, line_no, "unknown column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  RawDataset ds;
  ds.source = path;
  std::vector<std::size_t> feature_cols;
  std::size_t label_col = 0;

  if (opts.schema == Schema::Agri) {
    const std::string label =
        opts.label_column.empty() ? std::string("ETo") : opts.label_column;
    label_col = column_of(label);
    ds.feature_names =
        opts.features.empty() ? default_agri_features() : opts.features;
    for (const auto &f : ds.feature_names)
      feature_cols.push_back(column_of(f));
    ds.class_names = {{1, "C1"}, {2, "C2"}, {3, "C3"}};
  } else {
    std::string label = opts.label_column;
    if (label.empty())
      label = opts.schema == Schema::Iris ? "species" : header.back();
    label_col = column_of(label);
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == label_col)
        continue;
      feature_cols.push_back(c);
      ds.feature_names.push_back(header[c]);
    }
    if (opts.schema == Schema::Iris && feature_cols.size() != 4)
      throw IngestionError(path, line_no,
                           "iris schema expects 4 feature columns, found " +
                               std::to_string(feature_cols.size()));
    if (feature_cols.empty())
      throw IngestionError(path, line_no, "no feature columns");
  }

  std::map<std::string, int> class_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty())
      continue;
    ++ds.report.rows_read;
    const auto cells = detail::split_line(line, opts.delimiter);
    if (cells.size() != header.size())
      throw IngestionError(path, line_no,
                           "expected " + std::to_string(header.size()) +
                               " fields, found " + std::to_string(cells.size()));

    bool missing = detail::is_missing(cells[label_col]);
    for (std::size_t c : feature_cols)
      missing = missing || detail::is_missing(cells[c]);
    if (missing) {
      ++ds.report.rows_dropped;
      continue;
    }

    std::vector<double> row;
    row.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      double v = 0.0;
      if (!detail::parse_double(cells[c], v))
        throw IngestionError(path, line_no,
                             "non-numeric value '" + cells[c] +
                                 "' in column '" + header[c] + "'");
      row.push_back(v);
    }

    int label = 0;
    if (opts.schema == Schema::Agri) {
      double eto = 0.0;
      if (!detail::parse_double(cells[label_col], eto))
        throw IngestionError(path, line_no,
                             "non-numeric ETo value '" + cells[label_col] + "'");
      if (eto_out_of_range(eto))
        ++ds.report.eto_clamped;
      label = static_cast<int>(bin_eto(eto));
      ds.target.push_back(eto);
    } else {
      const auto [it, inserted] = class_ids.try_emplace(
          cells[label_col], static_cast<int>(class_ids.size()) + 1);
      if (inserted)
        ds.class_names[it->second] = it->first;
      label = it->second;
    }
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(label);
  }
  if (ds.rows.empty())
    throw IngestionError(path, line_no, "no usable data rows");
  return ds;
}

inline RawDataset load_csv(const std::string &path, const CsvOptions &opts = {}) {
  std::ifstream in(path);
  if (!in)
    throw IngestionError(path, 0, "cannot open file");
  return read_csv(in, path, opts);
}

/// Train/test partition, indices into the task's rows, both ascending.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Binary task over two source classes: `negative_id` maps to label 0 and
/// `positive_id` to label 1.
struct BinaryTask {
  std::string name;
  int negative_id = 0;
  int positive_id = 0;
  std::string negative_name;
  std::string positive_name;
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  /// Row index in the source dataset for every task row.
  std::vector<std::size_t> source_rows;
  Split split;
  double ratio = 0.8;
  std::uint64_t seed = 0;
};

/// Rows of two classes, relabelled to {0, 1}, in source order.
inline BinaryTask select_pair(const RawDataset &data, int negative_id,
                              int positive_id) {
  for (int id : {negative_id, positive_id})
    if (data.count(id) == 0)
      throw DomainError("unknown class id " + std::to_string(id));
  if (negative_id == positive_id)
    throw DomainError("pair needs two distinct classes");
  BinaryTask t;
  t.negative_id = negative_id;
  t.positive_id = positive_id;
  if (auto it = data.class_names.find(negative_id); it != data.class_names.end())
    t.negative_name = it->second;
  if (auto it = data.class_names.find(positive_id); it != data.class_names.end())
    t.positive_name = it->second;
  t.feature_names = data.feature_names;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.labels[i] != negative_id && data.labels[i] != positive_id)
      continue;
    t.rows.push_back(data.rows[i]);
    t.labels.push_back(data.labels[i] == positive_id ? 1 : 0);
    t.source_rows.push_back(i);
  }
  return t;
}

/// Training-set size: ratio * n rounded half up.
inline std::size_t train_count(std::size_t n, double ratio) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));
}

/// Stratified shuffle split. Per-class train counts start at
/// floor(ratio * n_class); remaining slots go to the classes with the
/// largest fractional parts (lower label first on ties) so the total equals
/// train_count(n, ratio).
inline Split stratified_split(std::span<const int> labels, double ratio,
                              std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw DomainError("split ratio must be in (0, 1)");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_class[labels[i]].push_back(i);

  struct Alloc {
    int label;
    std::size_t take;
    double frac;
    std::size_t size;
  };
  std::vector<Alloc> alloc;
  std::size_t assigned = 0;
  for (const auto &[label, idx] : by_class) {
    const double ideal = ratio * static_cast<double>(idx.size());
    const auto base = static_cast<std::size_t>(std::floor(ideal));
    alloc.push_back({label, base, ideal - static_cast<double>(base), idx.size()});
    assigned += base;
  }
  std::size_t remaining = train_count(labels.size(), ratio) - assigned;
  std::vector<std::size_t> order(alloc.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return alloc[a].frac > alloc[b].frac;
  });
  for (std::size_t i : order) {
    if (remaining == 0)
      break;
    if (alloc[i].take < alloc[i].size) {
      ++alloc[i].take;
      --remaining;
    }
  }

  std::mt19937_64 rng(seed);
  Split s;
  for (const auto &a : alloc) {
    auto idx = by_class[a.label];
    std::shuffle(idx.begin(), idx.end(), rng);
    s.train.insert(s.train.end(), idx.begin(), idx.begin() + a.take);
    s.test.insert(s.test.end(), idx.begin() + a.take, idx.end());
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

/// Per-task seed derived from the root seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// One task per (negative, positive) pair, named prefix1, prefix2, ...
inline std::vector<BinaryTask>
make_pairwise_tasks(const RawDataset &data,
                    std::span<const std::pair<int, int>> pairs, double ratio,
                    std::uint64_t seed, const std::string &name_prefix = "task") {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw DomainError("split ratio must be in (0, 1)");
  std::vector<BinaryTask> tasks;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    BinaryTask t = select_pair(data, pairs[p].first, pairs[p].second);
    t.name = name_prefix + std::to_string(p + 1);
    t.ratio = ratio;
    t.seed = derive_seed(seed, p);
    t.split = stratified_split(t.labels, ratio, t.seed);
    tasks.push_back(std::move(t));
  }
  return tasks;
}

/// Column statistics used to shape synthetic agri data.
struct FeatureProfile {
  const char *name;
  double max;
  double min;
  double mean;
  double sd;
  /// +1 if the feature rises with ETo, -1 if it falls.
  double direction;
};

inline const std::vector<FeatureProfile> &agri_profiles() {
  static const std::vector<FeatureProfile> p{
      {"Tmin", 30.7, 2.3, 18.71, 7.50, +1.0},
      {"Tmax", 44.4, 9.8, 30.39, 7.10, +1.0},
      {"RH", 100.0, 0.0, 73.30, 17.64, -1.0},
      {"u2", 16.0, 0.0, 3.23, 2.18, +1.0},
      {"Is", 12.2, 0.0, 6.24, 3.53, +1.0},
      {"Rs", 28.2, 4.9, 16.15, 6.14, +1.0},
  };
  return p;
}

/// Class means sit at mean + direction * shift * sd with shift in
/// {-s, 0, +s} for C1..C3.
inline constexpr double kAgriClassShift = 0.75;

inline double agri_class_mean(const FeatureProfile &f, int class_id) {
  return f.mean + f.direction * kAgriClassShift * (class_id - 2) * f.sd;
}

/// Synthetic stand-in for the station data: per class, features drawn from
/// Gaussians (sd = noise_sigma * column sd) truncated to the column range,
/// with ETo drawn inside the class bin.
inline RawDataset synth_agri(std::size_t n_per_class, std::uint64_t seed,
                             double noise_sigma = 1.0) {
  if (n_per_class < 1)
    throw DomainError("synth_agri: n_per_class must be >= 1");
  if (!(noise_sigma >= 0.0))
    throw DomainError("synth_agri: noise_sigma must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RawDataset ds;
  ds.source = "synth_agri(n=" + std::to_string(n_per_class) +
              ",seed=" + std::to_string(seed) + ")";
  ds.feature_names = default_agri_features();
  ds.class_names = {{1, "C1"}, {2, "C2"}, {3, "C3"}};
  const auto &profiles = agri_profiles();
  for (int cls = 1; cls <= 3; ++cls) {
    const double eto_lo = 2.0 * (cls - 1);
    std::uniform_real_distribution<double> eto_draw(eto_lo, eto_lo + 2.0);
    for (std::size_t i = 0; i < n_per_class; ++i) {
      std::vector<double> row;
      for (const auto &f : profiles) {
        const double mu = agri_class_mean(f, cls);
        double v = mu;
        if (noise_sigma > 0.0) {
          int tries = 0;
          do {
            v = mu + noise_sigma * f.sd * normal(rng);
          } while ((v < f.min || v > f.max) && ++tries < 1000);
          v = std::clamp(v, f.min, f.max);
        }
        row.push_back(v);
      }
      double eto = eto_lo + 1.0;
      if (noise_sigma > 0.0) {
        eto = eto_draw(rng);
        if (cls < 3 && eto >= eto_lo + 2.0)
          eto = std::nextafter(eto_lo + 2.0, eto_lo);
      }
      ds.rows.push_back(std::move(row));
      ds.labels.push_back(cls);
      ds.target.push_back(eto);
    }
  }
  ds.report.rows_read = ds.rows.size();
  return ds;
}

/// Writes an agri-schema CSV (features, then ETo) with round-trip precision.
inline void write_agri_csv(std::ostream &out, const RawDataset &ds) {
  for (std::size_t j = 0; j < ds.feature_names.size(); ++j)
    out << ds.feature_names[j] << ',';
  out << "ETo\n";
  out.precision(17);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.rows[i])
      out << v << ',';
    out << ds.target.at(i) << '\n';
  }
}

} // namespace mpsqc
