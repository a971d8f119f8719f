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

#include "mpsqc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

using namespace mpsqc;
namespace fs = std::filesystem;

namespace {

const std::string kIris = std::string(MPSQC_DATA_DIR) + "/iris.csv";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t line_count(const std::string &s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / "mpsqc_cli_test" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  void prepare_iris() {
    const auto r = call({"prepare", "--schema", "iris", "--input", kIris,
                         "--seed", "3", "--out-dir", dir_.string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  void train(const std::string &task, const std::string &out_dir,
             std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"train", "--task", path(task + ".task.json"),
                                  "--restarts", "1", "--max-iters", "30",
                                  "--seed", "9", "--out-dir", out_dir};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = call(args);
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path dir_;
};

} // namespace

TEST_F(CliTest, prepare_iris_writes_three_stratified_tasks) {
  prepare_iris();
  const char *names[] = {"Iris1", "Iris2", "Iris3"};
  for (const auto *name : names) {
    const auto j = json::parse(slurp(dir_ / (std::string(name) + ".task.json")));
    EXPECT_EQ(j["train"].size(), 80u);
    EXPECT_EQ(j["test"].size(), 20u);
  }
  const auto cfg = json::parse(slurp(dir_ / "prepare.config.json"));
  EXPECT_EQ(cfg["seed"], 3);
  EXPECT_EQ(cfg["pairs"], "1:2,2:3,1:3");
}

TEST_F(CliTest, missing_input_fails_without_outputs) {
  const auto r = call({"prepare", "--input", path("absent.csv"), "--out-dir",
                       dir_.string()});
  EXPECT_NE(r.code, 0);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, bad_arguments_are_usage_errors) {
  EXPECT_EQ(call({"prepare", "--bogus"}).code, 2);
  EXPECT_EQ(call({"prepare", "--input", kIris, "--ratio", "1.5", "--out-dir",
                  dir_.string()}).code, 2);
  EXPECT_EQ(call({"prepare", "--input", kIris, "--synth", "10", "--out-dir",
                  dir_.string()}).code, 2);
  EXPECT_EQ(call({"xcheck", "--trials", "0"}).code, 2);
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, prepare_synthetic_agri) {
  const auto r = call({"prepare", "--schema", "agri", "--synth", "100", "--seed",
                       "4", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(slurp(dir_ / "agri_synth.csv")), 301u);
  for (int k = 1; k <= 3; ++k) {
    const auto j = json::parse(slurp(dir_ / ("Agri" + std::to_string(k) + ".task.json")));
    EXPECT_EQ(j["train"].size() + j["test"].size(), 200u);
    EXPECT_EQ(j["test"].size(), 40u);
  }
}

TEST_F(CliTest, training_is_deterministic) {
  prepare_iris();
  fs::create_directories(dir_ / "a");
  fs::create_directories(dir_ / "b");
  train("Iris1", path("a"));
  train("Iris1", path("b"));
  const auto a = slurp(dir_ / "a" / "Iris1.model.json");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(dir_ / "b" / "Iris1.model.json"));
  EXPECT_EQ(slurp(dir_ / "a" / "Iris1.history.csv"),
            slurp(dir_ / "b" / "Iris1.history.csv"));
  const auto cfg = json::parse(slurp(dir_ / "a" / "Iris1.train.config.json"));
  EXPECT_EQ(cfg["restarts"], 1);
  EXPECT_EQ(cfg["optimizer"], "cg");
}

TEST_F(CliTest, eval_writes_report_and_samples) {
  prepare_iris();
  train("Iris1", dir_.string());
  const auto r = call({"eval", "--model", path("Iris1.model.json"), "--task",
                       path("Iris1.task.json"), "--split", "test", "--out-dir",
                       dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(slurp(dir_ / "Iris1.test.report.json"));
  EXPECT_EQ(j["n"], 20);
  for (const char *k : {"acc", "sens", "spec", "gini", "cost", "taylor", "counts"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(line_count(slurp(dir_ / "Iris1.test.samples.csv")), 21u);
  EXPECT_TRUE(fs::exists(dir_ / "Iris1.test.report.txt"));

  const auto mps = call({"eval", "--model", path("Iris1.model.json"), "--task",
                         path("Iris1.task.json"), "--backend", "mps",
                         "--out-dir", path("mps")});
  ASSERT_EQ(mps.code, 0) << mps.err;
  const auto jm = json::parse(slurp(dir_ / "mps" / "Iris1.test.report.json"));
  EXPECT_EQ(jm["counts"], j["counts"]);
  EXPECT_NEAR(jm["cost"].get<double>(), j["cost"].get<double>(), 1e-10);

  const auto rep = call({"report", "--reports", path("Iris1.test.report.json"),
                         path("mps/Iris1.test.report.json"), "--out-dir",
                         dir_.string()});
  ASSERT_EQ(rep.code, 0) << rep.err;
  EXPECT_EQ(line_count(slurp(dir_ / "summary.csv")), 3u);
}

TEST_F(CliTest, model_task_mismatch_is_rejected) {
  prepare_iris();
  train("Iris1", dir_.string());
  const auto r = call({"eval", "--model", path("Iris1.model.json"), "--task",
                       path("Iris2.task.json"), "--out-dir", dir_.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(dir_ / "Iris2.test.report.json"));
}

TEST_F(CliTest, predict_prints_labels_and_class_names) {
  prepare_iris();
  train("Iris1", dir_.string());
  const auto r = call({"predict", "--model", path("Iris1.model.json"), "--row",
                       "5.1,3.5,1.4,0.2", "--row", "6.4,3.2,4.5,1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, "label,score,class");
  EXPECT_NE(first.find("Iris-"), std::string::npos);
  EXPECT_NE(second.find("Iris-"), std::string::npos);
  EXPECT_EQ(call({"predict", "--model", path("Iris1.model.json"), "--row",
                  "5.1,3.5"}).code, 2);
}

TEST_F(CliTest, xcheck_agrees_with_bounded_bonds) {
  const auto r = call({"xcheck", "--wires", "5", "--trials", "200", "--out-dir",
                       dir_.string()});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  const auto j = json::parse(slurp(dir_ / "xcheck.json"));
  EXPECT_LT(j["max_delta"].get<double>(), 1e-8);
  const auto profile = j["max_bond_profile"].get<std::vector<int>>();
  const std::vector<int> bound{2, 4, 4, 2};
  ASSERT_EQ(profile.size(), bound.size());
  for (std::size_t k = 0; k < bound.size(); ++k)
    EXPECT_LE(profile[k], bound[k]);

  const auto seven = cli::run_xcheck(7, 50, 1, 1e-8);
  EXPECT_TRUE(seven.failed_trials.empty());
  EXPECT_TRUE(seven.bond_bound_ok);
  const std::vector<int> bound7{2, 4, 8, 8, 4, 2};
  for (std::size_t k = 0; k < bound7.size(); ++k)
    EXPECT_LE(seven.max_bond_profile[k], bound7[k]);
}

TEST_F(CliTest, config_file_values_yield_to_explicit_flags) {
  prepare_iris();
  {
    std::ofstream cfg(dir_ / "train.json");
    cfg << R"({"restarts": 2, "max-iters": 5, "optimizer": "sgd", "seed": 1})";
  }
  const auto r = call({"train", "--config", path("train.json"), "--task",
                       path("Iris3.task.json"), "--seed", "7", "--out-dir",
                       dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto used = json::parse(slurp(dir_ / "Iris3.train.config.json"));
  EXPECT_EQ(used["restarts"], 2);
  EXPECT_EQ(used["max-iters"], 5);
  EXPECT_EQ(used["optimizer"], "sgd");
  EXPECT_EQ(used["seed"], 7);

  {
    std::ofstream cfg(dir_ / "bad.json");
    cfg << R"({"no-such-key": 1})";
  }
  EXPECT_NE(call({"train", "--config", path("bad.json"), "--task",
                  path("Iris3.task.json"), "--out-dir", path("x")}).code, 0);
}

TEST_F(CliTest, help_exits_cleanly) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("xcheck"), std::string::npos);
}
