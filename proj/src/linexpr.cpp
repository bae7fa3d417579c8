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

#include "lois/linexpr.hpp"

#include <sstream>

namespace lois {

Rational LinExpr::evaluate(const JointPoint& point) const {
  Rational acc = constant_;
  for (const auto& [v, c] : coeffs_) {
    if (v < 0 || v >= point.size()) {
      throw Error(Error::Kind::kDimensionMismatch,
                  "expression references variable " + std::to_string(v) +
                      " but point has " + std::to_string(point.size()) +
                      " entries");
    }
    acc += c * Rational::from_int64(point[v]);
  }
  return acc;
}

LinExpr LinExpr::normalized() const {
  Int denom_lcm(1);
  for (const auto& [v, c] : coeffs_) denom_lcm = lcm(denom_lcm, c.denominator());
  denom_lcm = lcm(denom_lcm, constant_.denominator());
  Int numer_gcd(0);
  auto fold = [&](const Rational& r) {
    Int scaled = r.numerator() * (denom_lcm / r.denominator());
    Int a;
    mpz_abs(a.get_mpz_t(), scaled.get_mpz_t());
    numer_gcd = gcd(numer_gcd, a);
  };
  for (const auto& [v, c] : coeffs_) fold(c);
  fold(constant_);
  if (numer_gcd == 0) numer_gcd = 1;
  LinExpr out = *this;
  out *= Rational(denom_lcm, numer_gcd);
  return out;
}

std::string LinExpr::to_string(const std::vector<std::string>* names) const {
  auto var_name = [&](int v) {
    if (names != nullptr && v >= 0 && v < static_cast<int>(names->size())) {
      return (*names)[static_cast<std::size_t>(v)];
    }
    return "x" + std::to_string(v);
  };
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    Rational mag = c.abs();
    if (first) {
      if (c.sign() < 0) out << "-";
      first = false;
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    if (mag != Rational(1)) out << mag.to_string() << "*";
    out << var_name(v);
  }
  if (first) {
    out << constant_.to_string();
  } else if (!constant_.is_zero()) {
    out << (constant_.sign() < 0 ? " - " : " + ") << constant_.abs().to_string();
  }
  return out.str();
}

}  // namespace lois
