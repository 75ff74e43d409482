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

#ifndef PRIVAUCTION_RATIONAL_HPP_
#define PRIVAUCTION_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace privauction {

__extension__ typedef __int128 WideInt;

// Exact rational number with 64-bit numerator and denominator. Intermediate
// products use 128-bit integers; a result that does not fit back into 64 bits
// raises Error(kArithmeticOverflow) instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den);

  // Accepts only doubles that hold an integer of magnitude below 2^53.
  static Rational from_integral_double(double value);
  // Exact value of a finite double. Throws Error(kArithmeticOverflow) when
  // the binary denominator or the magnitude does not fit.
  static Rational from_double(double value);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const;
  std::string to_string() const;

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    return from_wide(-static_cast<WideInt>(a.num_), a.den_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const WideInt lhs = static_cast<WideInt>(a.num_) * b.den_;
    const WideInt rhs = static_cast<WideInt>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  static Rational from_wide(WideInt num, WideInt den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace privauction

#endif  // PRIVAUCTION_RATIONAL_HPP_
