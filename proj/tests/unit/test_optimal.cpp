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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "privauction/error.hpp"
#include "privauction/optimal.hpp"
#include "privauction/verify.hpp"

namespace privauction {
namespace {

const ValueInterval kUnit(0.0, 1.0);

AuctionInstance make(std::vector<double> w, std::vector<double> v, double b) {
  return AuctionInstance(std::move(w), std::move(v), b, kUnit);
}

// q(i) - B p(i) over prefixes of length i.
std::vector<double> g_values(const AuctionInstance& c) {
  std::vector<double> g;
  for (std::size_t i = 0; i <= c.size(); ++i) {
    double q = 0.0;
    double p = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j < i) q += c.unit_costs()[j] * c.abs_weight(j);
      else p += c.abs_weight(j);
    }
    g.push_back(q - c.budget() * p);
  }
  return g;
}

TEST(Fractional, HardnessInstance) {
  const auto inst = make({1, 1, 1, 1}, {1, 2, 2, 2}, 1.5);
  EXPECT_EQ(g_values(inst), (std::vector<double>{-6, -3.5, 0, 3.5, 7}));
  const auto sol = fractional_optimum(inst);
  EXPECT_EQ(sol.ell, 2U);
  EXPECT_EQ(sol.x_star, (std::vector<double>{1, 1, 0, 0}));
  EXPECT_DOUBLE_EQ(sol.objective, 2.0);
  double spend = 0.0;
  for (double p : sol.payments) spend += p;
  EXPECT_DOUBLE_EQ(spend, 1.5);
}

TEST(Fractional, InteriorCoordinate) {
  const auto inst = make({1, 1, 1, 1}, {1, 1, 1, 1}, 1.2);
  const auto sol = fractional_optimum(inst);
  EXPECT_EQ(sol.ell, 2U);
  EXPECT_NEAR(sol.x_star[2], 0.4 / 2.2, 1e-15);
  EXPECT_EQ(sol.x_star[3], 0.0);
  double spend = 0.0;
  for (double p : sol.payments) spend += p;
  EXPECT_NEAR(spend, 1.2, 1e-12);
}

TEST(Fractional, SmallBudgetBuysLittle) {
  const auto sol = fractional_optimum(make({1, 2}, {1, 1}, 1e-9));
  EXPECT_EQ(sol.ell, 0U);
  EXPECT_LT(sol.objective, 1e-8);
}

TEST(Fractional, AllFreeIsDegenerate) {
  try {
    fractional_optimum(make({1, 1}, {0, 0}, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateAllOnes);
  }
}

TEST(Fractional, MonotoneInBudget) {
  SweepConfig cfg;
  for (std::size_t idx = 0; idx < 200; ++idx) {
    const auto [c, perm] = canonicalize(generate_instance(cfg, idx));
    double last = 0.0;
    for (double scale : {0.25, 0.5, 1.0, 2.0, 4.0, 16.0, 256.0}) {
      const double obj = fractional_optimum(c.with_budget(c.budget() * scale)).objective;
      EXPECT_GE(obj, last * (1 - 1e-12));
      EXPECT_LT(obj, c.total_weight());
      last = obj;
    }
  }
}

TEST(Fractional, KktCertificateAndBudgetIdentity) {
  SweepConfig cfg;
  cfg.n_max = 14;
  for (std::size_t idx = 0; idx < 1000; ++idx) {
    const auto [c, perm] = canonicalize(generate_instance(cfg, idx));
    const auto sol = fractional_optimum(c);
    const auto kkt = kkt_certificate(c, sol);
    EXPECT_GE(kkt.min_multiplier, 0.0);
    EXPECT_LE(kkt.max_stationarity_residual, 1e-9);
    EXPECT_LE(kkt.max_complementarity_residual, 1e-9);
    EXPECT_LE(kkt.budget_residual, 1e-9 * c.budget());
    double spend = 0.0;
    for (double p : sol.payments) spend += p;
    EXPECT_NEAR(spend, c.budget(), 1e-9 * c.budget());
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_GE(sol.x_star[i], 0.0);
      EXPECT_LE(sol.x_star[i], 1.0);
    }
  }
}

TEST(Oracle, HardnessInstance) {
  const auto sol = brute_force_opt(make({1, 1, 1, 1}, {1, 2, 2, 2}, 1.5));
  EXPECT_EQ(sol.objective, 2.0);
  EXPECT_EQ(sol.x, (std::vector<bool>{true, true, false, false}));
  const auto scaled = brute_force_opt(hardness_instance(0.5, 3.0));
  EXPECT_DOUBLE_EQ(scaled.objective, 6.0);
}

TEST(Oracle, AllFreeAdmitsEveryone) {
  const auto sol = brute_force_opt(make({1, 2, 3}, {0, 0, 0}, 1));
  EXPECT_EQ(sol.objective, 6.0);
}

TEST(Oracle, TooLarge) {
  std::vector<double> w(21, 1.0), v(21, 1.0);
  try {
    brute_force_opt(make(w, v, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInstanceTooLarge);
  }
}

TEST(Oracle, MatchesRecursiveEnumeration) {
  for (auto cfg : {SweepConfig{}, SweepConfig::integer_grid()}) {
    cfg.n_max = 11;
    for (std::size_t idx = 0; idx < 300; ++idx) {
      const auto [c, perm] = canonicalize(generate_instance(cfg, idx));
      const auto sol = brute_force_opt(c);
      EXPECT_DOUBLE_EQ(sol.objective, testing::opt_by_recursion(c));
      double spend = 0.0;
      for (double p : sol.payments) spend += p;
      EXPECT_LE(spend, c.budget() * (1 + 1e-9));
    }
  }
}

TEST(Bounds, HardnessRatioIsTwo) {
  const auto r = opt_bounds_check(hardness_instance(1.0, 1.0));
  EXPECT_EQ(r.opt, 2.0);
  EXPECT_EQ(r.mechanism, 1.0);
  EXPECT_EQ(r.ratio, 2.0);
  EXPECT_TRUE(r.uniform_weights);
  EXPECT_TRUE(r.ok());
}

TEST(Bounds, HoldOnRandomInstances) {
  SweepConfig cfg;
  cfg.n_max = 12;
  for (std::size_t idx = 0; idx < 500; ++idx) {
    const auto [c, perm] = canonicalize(generate_instance(cfg, idx));
    const auto r = opt_bounds_check(c);
    EXPECT_TRUE(r.ok()) << idx;
    EXPECT_GE(r.ell, r.k);
    EXPECT_LE(r.opt, r.fractional * (1 + 1e-9));
    EXPECT_LE(r.ratio, 5.0);
  }
}

TEST(Bounds, MutationsAreFlagged) {
  SweepConfig cfg;
  cfg.n_max = 10;
  std::size_t flagged = 0;
  for (std::size_t idx = 0; idx < 300; ++idx) {
    const auto [c, perm] = canonicalize(generate_instance(cfg, idx));
    MechanismVariant v;
    v.k_off_by_one = true;
    if (!opt_bounds_check(c, v).ell_at_least_k) ++flagged;
  }
  EXPECT_GT(flagged, 0U);
}

}  // namespace
}  // namespace privauction
