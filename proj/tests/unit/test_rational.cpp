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
#include <cstdint>
#include <limits>

#include <gtest/gtest.h>

#include "privauction/error.hpp"
#include "privauction/rational.hpp"

namespace privauction {
namespace {

TEST(Rational, ReducesAndNormalizesSign) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(0, -7), Rational(0));
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_EQ(abs(Rational(-5, 2)), Rational(5, 2));
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(2, 4) <=> Rational(1, 2), std::strong_ordering::equal);
}

TEST(Rational, ZeroDenominatorAndDivisionThrow) {
  EXPECT_THROW(Rational(1, 0), Error);
  EXPECT_THROW(Rational(1) / Rational(0), Error);
}

TEST(Rational, OverflowIsReported) {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  try {
    (void)(big * big);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArithmeticOverflow);
  }
}

TEST(Rational, FromIntegralDouble) {
  EXPECT_EQ(Rational::from_integral_double(-12.0), Rational(-12));
  EXPECT_THROW(Rational::from_integral_double(0.5), Error);
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(Rational::from_double(1.5), Rational(3, 2));
  EXPECT_EQ(Rational::from_double(-0.375), Rational(-3, 8));
  const Rational tenth = Rational::from_double(0.1);
  EXPECT_EQ(tenth.to_double(), 0.1);
  EXPECT_EQ(tenth.den(), std::int64_t{1} << 55);
  EXPECT_THROW(Rational::from_double(std::nan("")), Error);
  EXPECT_THROW(Rational::from_double(1e300), Error);
}

TEST(Rational, ToString) {
  EXPECT_EQ(Rational(2, 3).to_string(), "2/3");
  EXPECT_EQ(Rational(-4).to_string(), "-4");
}

}  // namespace
}  // namespace privauction
