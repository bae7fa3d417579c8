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

#ifndef LOIS_LINEXPR_HPP
#define LOIS_LINEXPR_HPP

#include <map>
#include <string>
#include <vector>

#include "lois/rational.hpp"

namespace lois {

/// Integer point in the joint strategy space.
struct JointPoint {
  std::vector<long long> values;

  long long operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(values.size()); }

  friend bool operator==(const JointPoint& a, const JointPoint& b) {
    return a.values == b.values;
  }
  friend bool operator<(const JointPoint& a, const JointPoint& b) {
    return a.values < b.values;
  }
};

/// Sparse linear form `sum coeffs[i] * x_i + constant` with exact rational
/// coefficients. The map never stores zero coefficients.
class LinExpr {
 public:
  LinExpr() = default;
  explicit LinExpr(Rational constant) : constant_(std::move(constant)) {}

  const std::map<int, Rational>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  bool is_constant() const { return coeffs_.empty(); }

  void set_constant(Rational c) { constant_ = std::move(c); }
  void add_constant(const Rational& c) { constant_ += c; }

  void add_term(int var, const Rational& coef) {
    if (coef.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(var, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  LinExpr& operator+=(const LinExpr& other) {
    for (const auto& [v, c] : other.coeffs_) add_term(v, c);
    constant_ += other.constant_;
    return *this;
  }
  LinExpr& operator-=(const LinExpr& other) {
    for (const auto& [v, c] : other.coeffs_) add_term(v, -c);
    constant_ -= other.constant_;
    return *this;
  }
  LinExpr& operator*=(const Rational& s) {
    if (s.is_zero()) {
      coeffs_.clear();
      constant_ = Rational(0);
      return *this;
    }
    for (auto& [v, c] : coeffs_) c *= s;
    constant_ *= s;
    return *this;
  }
  LinExpr operator-() const {
    LinExpr r = *this;
    r *= Rational(-1);
    return r;
  }
  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, const Rational& s) { return a *= s; }

  friend bool operator==(const LinExpr& a, const LinExpr& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }

  Rational evaluate(const JointPoint& point) const;

  /// Largest variable index referenced, or -1 for a constant expression.
  int max_var() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  /// Divides by the gcd of all numerators times lcm of denominators so that
  /// equal-up-to-positive-scale expressions compare equal. Keeps the sign.
  LinExpr normalized() const;

  /// Renders e.g. "2*x0 + 2*x1 + 1" using the given variable namer.
  std::string to_string(const std::vector<std::string>* names = nullptr) const;

 private:
  std::map<int, Rational> coeffs_;
  Rational constant_;
};

enum class Rel { Ge, Le, Eq };

/// `expr rel 0`.
struct LinearConstraint {
  LinExpr expr;
  Rel rel = Rel::Ge;

  bool holds_at(const JointPoint& point) const {
    Rational v = expr.evaluate(point);
    switch (rel) {
      case Rel::Ge: return v.sign() >= 0;
      case Rel::Le: return v.sign() <= 0;
      case Rel::Eq: return v.is_zero();
    }
    return false;
  }
};

}  // namespace lois

#endif  // LOIS_LINEXPR_HPP
