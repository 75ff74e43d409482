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
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "privauction/error.hpp"
#include "privauction/estimator.hpp"

namespace privauction {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(PrivacyIndex, ZeroEpsilonGivesEverything) {
  const std::vector<double> w{1, -2, 3};
  const std::vector<double> e{0, 0, 0};
  const auto exact = privacy_index_exact(w, e);
  EXPECT_DOUBLE_EQ(exact.beta, 6.0);
  EXPECT_EQ(exact.witness, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(privacy_index_greedy(w, e).beta, 6.0);
}

TEST(PrivacyIndex, InfiniteEpsilonGivesNothing) {
  const std::vector<double> w{1, 1};
  const std::vector<double> e{kInf, kInf};
  const auto exact = privacy_index_exact(w, e);
  EXPECT_EQ(exact.beta, 0.0);
  EXPECT_TRUE(exact.witness.empty());
  const auto d = Dclef({1, 1}, ValueInterval(0, 1), {true, true});
  EXPECT_EQ(privacy_index_exact(d).beta, 0.0);
  EXPECT_EQ(privacy_index_greedy(d).beta, 0.0);
}

TEST(PrivacyIndex, StrictHalf) {
  const std::vector<double> w{3, 2, 2};
  const std::vector<double> e{0.3, 0.2, 0.2};
  const auto exact = privacy_index_exact(w, e);
  EXPECT_DOUBLE_EQ(exact.beta, 4.0);
  EXPECT_EQ(exact.witness, (std::vector<std::size_t>{1, 2}));
  EXPECT_GE(2.0 * privacy_index_greedy(w, e).beta, exact.beta);
}

TEST(PrivacyIndex, GreedySingleLargeEpsilon) {
  const std::vector<double> w{2};
  const std::vector<double> e{0.5};
  EXPECT_EQ(privacy_index_greedy(w, e).beta, 0.0);
  EXPECT_EQ(privacy_index_exact(w, e).beta, 0.0);
}

TEST(PrivacyIndex, GreedyBoundNeedsCanonicalEpsilons) {
  // Arbitrary epsilons can break the factor two; canonical ones cannot.
  const std::vector<double> w{1, 1, 0.99};
  const std::vector<double> e{0, 0.25, 0.2475};
  EXPECT_DOUBLE_EQ(privacy_index_exact(w, e).beta, 2.99);
  EXPECT_DOUBLE_EQ(privacy_index_greedy(w, e).beta, 1.0);
}

TEST(PrivacyIndex, RejectsBadInput) {
  const std::vector<double> w{1, 1};
  const std::vector<double> e{0.1};
  EXPECT_THROW(privacy_index_exact(w, e), Error);
  const std::vector<double> neg{0.1, -0.1};
  EXPECT_THROW(privacy_index_greedy(w, neg), Error);
  const std::vector<double> big_w(26, 1.0), big_e(26, 0.01);
  try {
    privacy_index_exact(big_w, big_e);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kInstanceTooLarge);
  }
}

TEST(PrivacyIndex, ExactMatchesEnumerationOnRandomEpsilons) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 0.4);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto w = testing::random_signed_weights(rng, n);
    std::vector<double> e(n);
    for (double& x : e) x = (rng() % 5 == 0) ? 0.0 : u(rng);
    const auto exact = privacy_index_exact(w, e);
    EXPECT_DOUBLE_EQ(exact.beta, testing::privacy_index_by_enumeration(w, e));
    double sum = 0.0;
    double weight = 0.0;
    for (std::size_t i : exact.witness) {
      sum += e[i];
      weight += std::fabs(w[i]);
    }
    EXPECT_LT(sum, 0.5);
    EXPECT_DOUBLE_EQ(weight, exact.beta);
  }
}

TEST(PrivacyIndex, GreedyHalfBoundOnEveryDclef) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const auto w = testing::random_signed_weights(rng, n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<bool> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = mask >> i & 1U;
      const Dclef d(w, ValueInterval(0, 1), x);
      const auto eps = epsilons(d).values;
      const double exact = privacy_index_exact(d).beta;
      EXPECT_DOUBLE_EQ(exact, testing::privacy_index_by_enumeration(w, eps));
      const auto greedy = privacy_index_greedy(d);
      EXPECT_GE(2.0 * greedy.beta, exact * (1 - 1e-12));
      EXPECT_LE(greedy.beta, exact * (1 + 1e-12));
      double sum = 0.0;
      for (std::size_t i : greedy.witness) sum += eps[i];
      EXPECT_LT(sum, 0.5);
    }
  }
}

}  // namespace
}  // namespace privauction
