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

#include "privauction/rational.hpp"

#include <cmath>
#include <limits>

#include "privauction/error.hpp"

namespace privauction {
namespace {

WideInt wide_gcd(WideInt a, WideInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const WideInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_int64(WideInt v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw Error(ErrorCode::kArithmeticOverflow, "rational with zero denominator");
  }
  *this = from_wide(num, den);
}

Rational Rational::from_wide(WideInt num, WideInt den) {
  if (den == 0) {
    throw Error(ErrorCode::kArithmeticOverflow, "rational division by zero");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const WideInt g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits_int64(num) || !fits_int64(den)) {
    throw Error(ErrorCode::kArithmeticOverflow,
                "rational result does not fit in 64 bits");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational Rational::from_integral_double(double value) {
  constexpr double kLimit = 9007199254740992.0;  // 2^53
  if (!std::isfinite(value) || std::trunc(value) != value ||
      std::fabs(value) >= kLimit) {
    throw Error(ErrorCode::kValidation,
                "value is not an exactly representable integer: " +
                    std::to_string(value));
  }
  return Rational(static_cast<std::int64_t>(value));
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kValidation, "non-finite value has no rational form");
  }
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  // value = mantissa * 2^exponent with a 53-bit integer mantissa.
  const double m = std::ldexp(std::frexp(value, &exponent), 53);
  exponent -= 53;
  auto num = static_cast<std::int64_t>(m);
  while (exponent < 0 && (num & 1) == 0) {
    num /= 2;
    ++exponent;
  }
  if (exponent >= 0) {
    if (exponent > 62 - 53) {
      throw Error(ErrorCode::kArithmeticOverflow, "value too large for Rational");
    }
    return Rational(num) * Rational(std::int64_t{1} << exponent);
  }
  if (exponent < -62) {
    throw Error(ErrorCode::kArithmeticOverflow,
                "denominator of " + std::to_string(value) + " exceeds 2^62");
  }
  return Rational(num, std::int64_t{1} << -exponent);
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& other) {
  *this = from_wide(static_cast<WideInt>(num_) * other.den_ +
                        static_cast<WideInt>(other.num_) * den_,
                    static_cast<WideInt>(den_) * other.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  *this = from_wide(static_cast<WideInt>(num_) * other.den_ -
                        static_cast<WideInt>(other.num_) * den_,
                    static_cast<WideInt>(den_) * other.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  *this = from_wide(static_cast<WideInt>(num_) * other.num_,
                    static_cast<WideInt>(den_) * other.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.num_ == 0) {
    throw Error(ErrorCode::kArithmeticOverflow, "rational division by zero");
  }
  *this = from_wide(static_cast<WideInt>(num_) * other.den_,
                    static_cast<WideInt>(den_) * other.num_);
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace privauction
