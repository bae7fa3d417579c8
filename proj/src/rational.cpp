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

#include "lois/rational.hpp"

#include <cctype>

namespace lois {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> Rational::parse(const std::string& text) {
  auto strip_plus = [](const std::string& s) {
    return !s.empty() && s[0] == '+' ? s.substr(1) : s;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) return std::nullopt;
    return Rational(Int(strip_plus(text)));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
  Int d(strip_plus(den));
  if (d == 0) return std::nullopt;
  return Rational(Int(strip_plus(num)), d);
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator().get_str();
  return numerator().get_str() + "/" + denominator().get_str();
}

std::string Rational::to_decimal(int digits) const {
  Int pow10(1);
  for (int i = 0; i < digits; ++i) pow10 *= 10;
  Rational scaled = *this * Rational(pow10);
  Int units = scaled.abs().round_half_up();
  Int whole = units / pow10;
  Int frac = units % pow10;
  std::string frac_str = frac.get_str();
  frac_str.insert(frac_str.begin(), digits - frac_str.size(), '0');
  std::string out;
  if (sign() < 0 && units != 0) out += "-";
  out += whole.get_str();
  if (digits > 0) out += "." + frac_str;
  return out;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  long long r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) {
  long long q = a / b;
  long long r = a % b;
  if (r != 0 && ((r < 0) == (b < 0))) ++q;
  return q;
}

}  // namespace lois
