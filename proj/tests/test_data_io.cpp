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

#include "mpsqc/data_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "gtest/gtest.h"

#include "mpsqc/encoding.hpp"

using namespace mpsqc;
namespace fs = std::filesystem;

namespace {

const std::string kIris = std::string(MPSQC_DATA_DIR) + "/iris.csv";

fs::path write_temp(const std::string &name, const std::string &content) {
  const fs::path dir = fs::temp_directory_path() / "mpsqc_data_io_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

RawDataset two_class(std::size_t n0, std::size_t n1) {
  RawDataset d;
  d.feature_names = {"x"};
  d.class_names = {{1, "a"}, {2, "b"}};
  for (std::size_t i = 0; i < n0 + n1; ++i) {
    d.rows.push_back({static_cast<double>(i)});
    d.labels.push_back(i < n0 ? 1 : 2);
  }
  return d;
}

} // namespace

TEST(load_csv, iris) {
  const auto d = load_csv(kIris, {Schema::Iris});
  EXPECT_EQ(d.size(), 150u);
  EXPECT_EQ(d.feature_names.size(), 4u);
  EXPECT_EQ(d.class_names.size(), 3u);
  EXPECT_EQ(d.class_names.at(1), "Iris-setosa");
  EXPECT_EQ(d.class_names.at(3), "Iris-virginica");
  for (int c = 1; c <= 3; ++c)
    EXPECT_EQ(d.count(c), 50u);
  EXPECT_EQ(d.report.rows_dropped, 0u);
}

TEST(load_csv, agri_schema) {
  const auto p = write_temp("agri.csv",
                            "Tmin,Tmax,RH,u2,Is,Rs,ETo\n"
                            "10,20,70,2,5,12,0.5\n"
                            "15,30,60,3,7,16,3.0\n"
                            "25,40,40,5,10,25,5.5\n");
  const auto d = load_csv(p.string(), {Schema::Agri});
  EXPECT_EQ(d.feature_names, default_agri_features());
  EXPECT_EQ(d.rows[0].size(), 6u);
  EXPECT_EQ(d.labels, (std::vector{1, 2, 3}));
  EXPECT_EQ(d.target, (std::vector{0.5, 3.0, 5.5}));

  CsvOptions subset{Schema::Agri};
  subset.features = {"Tmax", "Rs"};
  EXPECT_EQ(load_csv(p.string(), subset).rows[2], (std::vector{40.0, 25.0}));
}

TEST(load_csv, missing_cells_drop_rows) {
  const auto p = write_temp("blank.csv", "a,b,label\n1,2,x\n3,,y\n5,6,y\n");
  const auto d = load_csv(p.string());
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.report.rows_dropped, 1u);
  EXPECT_EQ(d.report.rows_read, 3u);
}

TEST(load_csv, errors_carry_line_numbers) {
  const auto bad = write_temp("bad.csv", "a,b,label\n1,2,x\n3,oops,y\n");
  try {
    load_csv(bad.string());
    FAIL();
  } catch (const IngestionError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  CsvOptions opts;
  opts.label_column = "nope";
  EXPECT_THROW(load_csv(bad.string(), opts), IngestionError);
  EXPECT_THROW(load_csv("/nonexistent/file.csv"), IngestionError);
  const auto semi = write_temp("semi.csv", "a;label\n1.5;x\n2.5;y\n");
  CsvOptions sc;
  sc.delimiter = ';';
  EXPECT_EQ(load_csv(semi.string(), sc).rows[1][0], 2.5);
}

TEST(bin_eto, table_examples) {
  EXPECT_EQ(bin_eto(0.5), EtoClass::C1);
  EXPECT_EQ(bin_eto(3.0), EtoClass::C2);
  EXPECT_EQ(bin_eto(5.5), EtoClass::C3);
  EXPECT_EQ(bin_eto(1.999), EtoClass::C1);
  EXPECT_EQ(bin_eto(2.0), EtoClass::C2);
  EXPECT_EQ(bin_eto(4.0), EtoClass::C3);
  EXPECT_EQ(bin_eto(-1.0), EtoClass::C1);
  EXPECT_EQ(bin_eto(9.0), EtoClass::C3);
  EXPECT_TRUE(eto_out_of_range(9.0));
  EXPECT_THROW(bin_eto(std::nan("")), DomainError);
}

TEST(bin_eto, total_and_monotone) {
  int prev = 1;
  for (int i = 0; i <= 6000; ++i) {
    const int c = static_cast<int>(bin_eto(i / 1000.0));
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(make_pairwise_tasks, iris_pairs) {
  const auto d = load_csv(kIris, {Schema::Iris});
  const std::vector<std::pair<int, int>> pairs{{1, 2}, {2, 3}, {1, 3}};
  const auto tasks = make_pairwise_tasks(d, pairs, 0.8, 7, "Iris");
  ASSERT_EQ(tasks.size(), 3u);
  for (const auto &t : tasks) {
    EXPECT_EQ(t.rows.size(), 100u);
    EXPECT_EQ(t.split.train.size(), 80u);
    EXPECT_EQ(t.split.test.size(), 20u);
    std::size_t pos_train = 0;
    for (std::size_t i : t.split.train)
      pos_train += t.labels[i];
    EXPECT_EQ(pos_train, 40u);
  }
  EXPECT_EQ(tasks[0].name, "Iris1");
  // First listed class becomes label 0.
  EXPECT_EQ(tasks[0].labels.front(), 0);
  EXPECT_EQ(tasks[0].negative_name, "Iris-setosa");

  const auto again = make_pairwise_tasks(d, pairs, 0.8, 7, "Iris");
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(tasks[i].split.train, again[i].split.train);
    EXPECT_EQ(tasks[i].split.test, again[i].split.test);
  }
  const auto other = make_pairwise_tasks(d, pairs, 0.8, 8, "Iris");
  EXPECT_NE(tasks[0].split.train, other[0].split.train);
}

TEST(make_pairwise_tasks, rounding_and_partition) {
  const auto d = two_class(50, 51);
  const std::vector<std::pair<int, int>> pairs{{1, 2}};
  const auto t = make_pairwise_tasks(d, pairs, 0.8, 1).front();
  EXPECT_EQ(t.split.train.size(), 81u);
  EXPECT_EQ(t.split.test.size(), 20u);

  for (std::size_t n0 = 1; n0 < 30; n0 += 3)
    for (std::size_t n1 = 1; n1 < 30; n1 += 5)
      for (double ratio : {0.5, 0.7, 0.8, 0.9}) {
        const auto task = make_pairwise_tasks(two_class(n0, n1), pairs, ratio, n0 * 31 + n1).front();
        std::set<std::size_t> all(task.split.train.begin(), task.split.train.end());
        for (std::size_t i : task.split.test)
          EXPECT_TRUE(all.insert(i).second) << "index in both splits";
        EXPECT_EQ(all.size(), n0 + n1);
        EXPECT_EQ(task.split.train.size(), train_count(n0 + n1, ratio));
        std::size_t pos = 0;
        for (std::size_t i : task.split.train)
          pos += task.labels[i];
        const double ideal = ratio * n1;
        EXPECT_LE(std::abs(static_cast<double>(pos) - ideal), 1.0);
      }
}

TEST(make_pairwise_tasks, errors) {
  const auto d = two_class(3, 3);
  const std::vector<std::pair<int, int>> bad{{1, 5}};
  EXPECT_THROW(make_pairwise_tasks(d, bad, 0.8, 0), DomainError);
  const std::vector<std::pair<int, int>> ok{{1, 2}};
  EXPECT_THROW(make_pairwise_tasks(d, ok, 1.0, 0), DomainError);
}

TEST(iris_bounds, training_split_bounds_are_proper) {
  const auto d = load_csv(kIris, {Schema::Iris});
  const std::vector<std::pair<int, int>> pairs{{1, 3}};
  const auto t = make_pairwise_tasks(d, pairs, 0.8, 7).front();
  std::vector<std::vector<double>> train;
  for (std::size_t i : t.split.train)
    train.push_back(t.rows[i]);
  const auto b = fit_bounds(train);
  ASSERT_EQ(b.size(), 4u);
  for (std::size_t j = 0; j < 4; ++j) {
    double lo = 1e9, hi = -1e9;
    for (const auto &r : train) {
      lo = std::min(lo, r[j]);
      hi = std::max(hi, r[j]);
    }
    EXPECT_EQ(b.min[j], lo);
    EXPECT_EQ(b.max[j], hi);
    EXPECT_LT(b.min[j], b.max[j]);
  }
}

TEST(synth_agri, shape_ranges_and_determinism) {
  const auto d = synth_agri(10, 3, 0.1);
  EXPECT_EQ(d.size(), 30u);
  for (int c = 1; c <= 3; ++c)
    EXPECT_EQ(d.count(c), 10u);
  const auto &prof = agri_profiles();
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < prof.size(); ++j) {
      EXPECT_GE(d.rows[i][j], prof[j].min);
      EXPECT_LE(d.rows[i][j], prof[j].max);
    }
    EXPECT_EQ(static_cast<int>(bin_eto(d.target[i])), d.labels[i]);
  }
  const auto again = synth_agri(10, 3, 0.1);
  EXPECT_EQ(d.rows, again.rows);
  const auto other = synth_agri(10, 4, 0.1);
  EXPECT_EQ(other.size(), d.size());
  EXPECT_NE(other.rows, d.rows);
}

TEST(synth_agri, zero_noise_sits_on_class_means) {
  const auto d = synth_agri(4, 1, 0.0);
  const auto &prof = agri_profiles();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < prof.size(); ++j)
      EXPECT_DOUBLE_EQ(d.rows[i][j], agri_class_mean(prof[j], d.labels[i]));
  EXPECT_THROW(synth_agri(0, 1, 0.1), DomainError);
}
