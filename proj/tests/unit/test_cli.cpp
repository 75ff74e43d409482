//
// Copyright 2026 The privauction Authors
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
//

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace privauction::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(PRIVAUCTION_TEST_DATA_DIR) + "/" + name;
}

TEST(Cli, RunCompareOptReportsRatioTwo) {
  const auto r = run({"run", data("hardness.json"), "--compare-opt"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["ratio"], 2.0);
  EXPECT_EQ(doc["oracle"]["objective"], 2.0);
  EXPECT_EQ(doc["branch"], "star");
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, RunIsByteIdenticalForASeed) {
  const auto a = run({"--seed", "7", "run", data("signed.json")});
  const auto b = run({"--seed", "7", "run", data("signed.json")});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  ASSERT_TRUE(doc.contains("estimate"));
  const auto c = run({"--seed", "8", "run", data("signed.json")});
  EXPECT_NE(nlohmann::json::parse(c.out)["estimate"]["value"], doc["estimate"]["value"]);
}

TEST(Cli, RunCsvAndRational) {
  const auto csv = run({"--output", "csv", "run", data("signed.json")});
  ASSERT_EQ(csv.code, kOk) << csv.err;
  EXPECT_EQ(csv.out.rfind("index,", 0), 0U);
  const auto exact = run({"--arithmetic", "rational", "run", data("hardness.json")});
  ASSERT_EQ(exact.code, kOk) << exact.err;
  EXPECT_EQ(nlohmann::json::parse(exact.out)["payments_exact"][0], "2/3");
}

TEST(Cli, ExitCodes) {
  const auto malformed = run({"run", data("malformed.json")});
  EXPECT_EQ(malformed.code, kInputError);
  EXPECT_EQ(nlohmann::json::parse(malformed.err)["error"], "ParseError");
  EXPECT_TRUE(malformed.out.empty());
  const auto missing = run({"run", data("does_not_exist.json")});
  EXPECT_EQ(missing.code, kInputError);
  const auto empty = run({"run", data("empty.json")});
  EXPECT_EQ(empty.code, kEmpty);
  EXPECT_EQ(nlohmann::json::parse(empty.err)["error"], "EmptyInstance");
  EXPECT_EQ(run({"frobnicate"}).code, kInputError);
  EXPECT_EQ(run({"--output", "xml", "run", data("hardness.json")}).code, kInputError);
}

TEST(Cli, VerifyTinyConfig) {
  const auto start = std::chrono::steady_clock::now();
  const auto r = run({"verify", data("tiny_sweep.json")});
  const auto elapsed = std::chrono::steady_clock::now() - start;
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_LT(elapsed, std::chrono::seconds(1));
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["passed"], true);
  EXPECT_TRUE(doc.contains("truthfulness"));
  EXPECT_TRUE(doc.contains("approximation"));
}

TEST(Cli, VerifyMutationExitsThree) {
  const auto r = run({"verify", data("tiny_sweep.json"), "--instances", "200",
                      "--mutate", "payment-scale:0.9"});
  EXPECT_EQ(r.code, kPropertyFailure);
  const auto err = nlohmann::json::parse(r.err);
  EXPECT_EQ(err["error"], "PropertyFailure");
  EXPECT_FALSE(err["witnesses"].empty());
  EXPECT_EQ(nlohmann::json::parse(r.out)["passed"], false);
  EXPECT_EQ(run({"verify", "--mutate", "nonsense", "--instances", "1"}).code, kInputError);
}

TEST(Cli, WeightsKnn) {
  const auto r = run({"weights", data("line3.csv"), "--id-column", "--query", "0.9",
                      "--method", "knn", "--k", "2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["weights"], nlohmann::json::parse("[0.5,0.5,0.0]"));
  EXPECT_EQ(doc["dropped"], nlohmann::json::array({2}));
  EXPECT_EQ(doc["kept"], nlohmann::json::array({0, 1}));
}

TEST(Cli, WeightsRidge) {
  const auto r = run({"weights", data("two_rows.csv"), "--query", "1", "--method",
                      "ridge", "--lambda", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto w = nlohmann::json::parse(r.out)["weights"];
  EXPECT_NEAR(w[0].get<double>(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(w[1].get<double>(), 1.0 / 3.0, 1e-15);
}

TEST(Cli, WeightsToInstance) {
  const auto r = run({"weights", data("line3.csv"), "--id-column", "--query", "0.9",
                      "--method", "knn", "--k", "2", "--costs", "1,2", "--budget", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["weights"], nlohmann::json::parse("[0.5,0.5]"));
  EXPECT_EQ(doc["unit_costs"], nlohmann::json::parse("[1.0,2.0]"));
  EXPECT_EQ(doc["source_index"], nlohmann::json::array({0, 1}));
  const auto short_costs =
      run({"weights", data("line3.csv"), "--id-column", "--query", "0.9", "--method",
           "knn", "--k", "2", "--costs", "1", "--budget", "3"});
  EXPECT_EQ(short_costs.code, kInputError);
}

TEST(Cli, OracleAndFractional) {
  const auto o = run({"oracle", data("hardness.json")});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(nlohmann::json::parse(o.out)["objective"], 2.0);
  const auto f = run({"fractional", data("hardness.json")});
  ASSERT_EQ(f.code, kOk) << f.err;
  const auto doc = nlohmann::json::parse(f.out);
  EXPECT_EQ(doc["ell"], 2);
  EXPECT_GE(doc["kkt"]["min_multiplier"].get<double>(), 0.0);
}

}  // namespace
}  // namespace privauction::cli
