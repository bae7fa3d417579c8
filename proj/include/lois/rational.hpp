// Copyright 2026 The LOIS Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOIS_RATIONAL_HPP
#define LOIS_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace lois {

/// Arbitrary-precision signed integer. All scaled constraint systems and
/// interval computations use this type; the solver never touches floating
/// point.
using Int = mpz_class;

class Error : public std::runtime_error {
 public:
  enum class Kind {
    kDimensionMismatch,
    kInvalidArgument,
    kUnbounded,
    kNotLinear,
    kLimit,
    kIo,
  };

  Error(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Exact rational scalar. Canonical form is maintained at all times:
/// denominator > 0 and gcd(|numerator|, denominator) == 1.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(int v) : value_(v) {}             // NOLINT (implicit by design)
  Rational(long v) : value_(static_cast<long int>(v)) {}  // NOLINT
  Rational(long long v) {                    // NOLINT
    value_ = from_int64(v).value_;
  }
  explicit Rational(const Int& v) : value_(v) {}
  Rational(const Int& num, const Int& den) {
    if (den == 0) throw Error(Error::Kind::kInvalidArgument, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  Rational(long long num, long long den)
      : Rational(Int(std::to_string(num)), Int(std::to_string(den))) {}

  static Rational from_int64(long long v) {
    return Rational(Int(std::to_string(v)));
  }

  /// Parses "p", "-p" or "p/q". Returns nullopt on malformed input.
  static std::optional<Rational> parse(const std::string& text);

  Int numerator() const { return Int(value_.get_num()); }
  Int denominator() const { return Int(value_.get_den()); }
  bool is_integer() const { return value_.get_den() == 1; }
  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Error::Kind::kInvalidArgument, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  Int floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
  }
  Int ceil() const {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return q;
  }
  /// Rounds to the nearest integer, halves away from zero... halves up.
  Int round_half_up() const { return (*this + Rational(Int(1), Int(2))).floor(); }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  /// Decimal rendering with the given number of fraction digits (round half
  /// up), used only for human-facing CSV columns.
  std::string to_decimal(int digits) const;

  double to_double() const { return value_.get_d(); }

 private:
  explicit Rational(const mpq_class& v) : value_(v) {}
  mpq_class value_;
};

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// floor(a/b) with exact semantics for negative operands; b must be nonzero.
long long floor_div(long long a, long long b);
/// ceil(a/b) with exact semantics for negative operands; b must be nonzero.
long long ceil_div(long long a, long long b);

}  // namespace lois

#endif  // LOIS_RATIONAL_HPP
