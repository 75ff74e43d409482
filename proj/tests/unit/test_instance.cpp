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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "privauction/error.hpp"
#include "privauction/instance.hpp"

namespace privauction {
namespace {

const ValueInterval kUnit(0.0, 1.0);

AuctionInstance make(std::vector<double> w, std::vector<double> v, double b) {
  return AuctionInstance(std::move(w), std::move(v), b, kUnit);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvariantViolation;
}

TEST(Instance, ValidationMessages) {
  try {
    make({0.0, 1.0}, {1.0, 1.0}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
    EXPECT_STREQ(e.what(), "weight zero at index 0");
  }
  try {
    ValueInterval(1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "degenerate interval");
  }
  EXPECT_EQ(code_of([] { make({1.0}, {1.0, 2.0}, 1.0); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { make({1.0}, {-1.0}, 1.0); }), ErrorCode::kValidation);
  EXPECT_EQ(code_of([] { make({1.0}, {1.0}, 0.0); }), ErrorCode::kValidation);
}

TEST(Instance, TotalWeightUsesMagnitudes) {
  const auto inst = make({1.0, -2.0, 0.5}, {1.0, 1.0, 1.0}, 1.0);
  EXPECT_DOUBLE_EQ(inst.total_weight(), 3.5);
  const std::vector<std::size_t> h{1, 2};
  EXPECT_DOUBLE_EQ(inst.weight_of(h), 2.5);
}

TEST(Instance, DatabaseMustLieInInterval) {
  EXPECT_THROW(Database({0.5, 1.5}, kUnit), Error);
  EXPECT_NO_THROW(Database({0.0, 1.0}, kUnit));
}

TEST(Canonicalize, SortsCostsAndRecordsPermutation) {
  const auto [c, perm] = canonicalize(make({1, 1, 1}, {3, 1, 2}, 1));
  EXPECT_EQ(c.unit_costs(), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(perm.forward(), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(Canonicalize, SortedInputGivesIdentity) {
  const auto [c, perm] = canonicalize(make({1, 1, 1}, {1, 2, 3}, 1));
  EXPECT_TRUE(perm.is_identity());
}

TEST(Canonicalize, TiesKeepInputOrder) {
  const auto [c, perm] = canonicalize(make({1, 2, 3}, {2, 2, 1}, 1));
  EXPECT_EQ(perm.forward(), (std::vector<std::size_t>{2, 0, 1}));
  EXPECT_EQ(c.weights(), (std::vector<double>{3, 1, 2}));
}

TEST(Canonicalize, MatchesReferenceSortAndIsIdempotent) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> cost(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 9;
    std::vector<double> w(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = static_cast<double>(i + 1);
      v[i] = cost(rng);
    }
    const auto inst = make(w, v, 1.0);
    const auto [c, perm] = canonicalize(inst);
    std::vector<std::pair<double, std::size_t>> keys;
    for (std::size_t i = 0; i < n; ++i) keys.emplace_back(v[i], i);
    std::sort(keys.begin(), keys.end());
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(perm.to_original(j), keys[j].second);
      EXPECT_EQ(perm.to_canonical(keys[j].second), j);
    }
    EXPECT_TRUE(c.is_canonical());
    EXPECT_TRUE(canonicalize(c).second.is_identity());
    EXPECT_EQ(perm.to_original_order(c.weights()), w);
  }
}

TEST(Filter, BudgetDominatesKeepsEveryone) {
  const auto r = filter_payable(make({1, 1, 1, 1}, {1, 1, 1, 1}, 10));
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(r.kept.size(), 4U);
}

TEST(Filter, CascadeEndsEmpty) {
  EXPECT_EQ(code_of([] { filter_payable(make({1, 1}, {100, 1}, 1)); }),
            ErrorCode::kEmptyInstance);
}

TEST(Filter, BoundaryCaseKept) {
  const auto r = filter_payable(make({1, 2, 1}, {5, 1, 1}, 2));
  EXPECT_TRUE(r.removed.empty());
}

TEST(Filter, FixedPointRemovesMoreThanOnePass) {
  const auto inst = make({1, 1, 1, 1}, {1, 1, 2.5, 10}, 1);
  const auto once = filter_payable(inst, FilterMode::kOnce);
  const auto fixed = filter_payable(inst, FilterMode::kFixedPoint);
  EXPECT_EQ(once.removed, (std::vector<std::size_t>{3}));
  EXPECT_EQ(fixed.removed, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(fixed.instance.size(), 2U);
}

TEST(Filter, ZeroDenominatorIsViolation) {
  EXPECT_FALSE(is_payable(1.0, 0.0, 1.0, 5.0));
  EXPECT_TRUE(is_payable(1.0, 3.0, 2.0, 3.0));
  EXPECT_FALSE(is_payable(1.0, 3.0, 2.0, 2.9));
}

TEST(Filter, SurvivorsArePayableAndOrderDoesNotMatter) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 8;
    std::vector<double> w(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = u(rng);
      v[i] = u(rng);
    }
    const double b = u(rng);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto inst = make(w, v, b);
    const auto shuffled = inst.subset(order);
    std::vector<std::size_t> a, c;
    try {
      const auto r = filter_payable(inst);
      const double total = r.instance.total_weight();
      for (std::size_t i = 0; i < r.instance.size(); ++i) {
        EXPECT_TRUE(is_payable(r.instance.abs_weight(i),
                                          r.instance.unit_costs()[i], total, b));
      }
      a = r.kept;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kEmptyInstance);
    }
    try {
      for (std::size_t k : filter_payable(shuffled).kept) c.push_back(order[k]);
      std::sort(c.begin(), c.end());
    } catch (const Error&) {
    }
    EXPECT_EQ(a, c);
  }
}

}  // namespace
}  // namespace privauction
