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

#include "lois/model.hpp"

#include <algorithm>

namespace lois {

void QuadraticPayoff::add_quad(int i, int j, const Rational& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(i, j);
  auto [it, inserted] = quad.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) quad.erase(it);
  }
}

void QuadraticPayoff::add_lin(int i, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = lin.emplace(i, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) lin.erase(it);
  }
}

Rational QuadraticPayoff::evaluate(const JointPoint& point) const {
  if (point.size() != dim) {
    throw Error(Error::Kind::kDimensionMismatch,
                "payoff dimension " + std::to_string(dim) + " vs point size " +
                    std::to_string(point.size()));
  }
  Rational acc = offset;
  for (const auto& [ij, c] : quad) {
    acc += c * Rational::from_int64(point[ij.first]) *
           Rational::from_int64(point[ij.second]);
  }
  for (const auto& [i, c] : lin) {
    acc += c * Rational::from_int64(point[i]);
  }
  return acc;
}

QuadraticPayoff QuadraticPayoff::minimization_form() const {
  if (sense == Sense::Minimize) return *this;
  QuadraticPayoff out;
  out.dim = dim;
  out.sense = Sense::Minimize;
  for (const auto& [ij, c] : quad) out.quad.emplace(ij, -c);
  for (const auto& [i, c] : lin) out.lin.emplace(i, -c);
  out.offset = -offset;
  return out;
}

LinExpr QuadraticPayoff::linear_part() const {
  if (!is_linear()) {
    throw Error(Error::Kind::kNotLinear, "payoff has quadratic terms");
  }
  LinExpr e(offset);
  for (const auto& [i, c] : lin) e.add_term(i, c);
  return e;
}

int IPGInstance::total_vars() const {
  int n = 0;
  for (const auto& b : blocks) n += b.count;
  return n;
}

long long IPGInstance::lower_of(int var) const {
  for (const auto& b : blocks) {
    if (b.contains(var)) return b.lower[static_cast<std::size_t>(var - b.first)];
  }
  throw Error(Error::Kind::kDimensionMismatch, "variable out of range");
}

long long IPGInstance::upper_of(int var) const {
  for (const auto& b : blocks) {
    if (b.contains(var)) return b.upper[static_cast<std::size_t>(var - b.first)];
  }
  throw Error(Error::Kind::kDimensionMismatch, "variable out of range");
}

bool IPGInstance::in_bounds(const JointPoint& point) const {
  if (point.size() != total_vars()) {
    throw Error(Error::Kind::kDimensionMismatch, "point dimension mismatch");
  }
  for (const auto& b : blocks) {
    for (int k = 0; k < b.count; ++k) {
      long long v = point[b.first + k];
      if (v < b.lower[static_cast<std::size_t>(k)] ||
          v > b.upper[static_cast<std::size_t>(k)])
        return false;
    }
  }
  return true;
}

Rational evaluate_payoff(const IPGInstance& instance, int player,
                         const JointPoint& point) {
  if (player < 0 || player >= instance.player_count()) {
    throw Error(Error::Kind::kInvalidArgument, "player index out of range");
  }
  if (point.size() != instance.total_vars()) {
    throw Error(Error::Kind::kDimensionMismatch,
                "point has " + std::to_string(point.size()) +
                    " entries, instance has " +
                    std::to_string(instance.total_vars()) + " variables");
  }
  return instance.player(player).payoff.evaluate(point);
}

bool is_player_feasible(const IPGInstance& instance, int player,
                        const JointPoint& point) {
  if (point.size() != instance.total_vars()) {
    throw Error(Error::Kind::kDimensionMismatch, "point dimension mismatch");
  }
  for (const auto& c : instance.player(player).constraints) {
    if (!c.holds_at(point)) return false;
  }
  return true;
}

std::vector<LinExpr> ge_form_constraints(const PlayerProgram& player) {
  std::vector<LinExpr> out;
  for (const auto& c : player.constraints) {
    switch (c.rel) {
      case Rel::Ge:
        out.push_back(c.expr);
        break;
      case Rel::Le:
        out.push_back(-c.expr);
        break;
      case Rel::Eq:
        out.push_back(c.expr);
        out.push_back(-c.expr);
        break;
    }
  }
  return out;
}

SizeEstimate size_estimate(const IPGInstance& instance) {
  SizeEstimate est;
  for (const auto& p : instance.players) {
    long long n = p.own_block.count;
    long long m = static_cast<long long>(ge_form_constraints(p).size());
    est.variables += 2 * n * (m + 1) + n;
    est.constraints += 2 * n * (m + 2) + m;
  }
  return est;
}

std::vector<std::string> validate(const IPGInstance& instance) {
  std::vector<std::string> diags;
  int n_players = instance.player_count();
  int total = instance.total_vars();

  // Blocks must partition 0..N-1.
  std::vector<VarBlock> sorted = instance.blocks;
  std::sort(sorted.begin(), sorted.end(),
            [](const VarBlock& a, const VarBlock& b) { return a.first < b.first; });
  int expect = 0;
  for (const auto& b : sorted) {
    if (b.count <= 0) diags.push_back("block has nonpositive size");
    if (b.first != expect) {
      diags.push_back("blocks do not partition the joint vector at index " +
                      std::to_string(expect));
      break;
    }
    expect = b.first + b.count;
  }
  if (expect != total) {
    diags.push_back("blocks cover " + std::to_string(expect) + " of " +
                    std::to_string(total) + " variables");
  }

  for (const auto& b : instance.blocks) {
    if (static_cast<int>(b.lower.size()) != b.count ||
        static_cast<int>(b.upper.size()) != b.count) {
      diags.push_back("block bound vectors do not match block size");
      continue;
    }
    for (int k = 0; k < b.count; ++k) {
      if (b.lower[static_cast<std::size_t>(k)] >
          b.upper[static_cast<std::size_t>(k)]) {
        diags.push_back("variable " + std::to_string(b.first + k) +
                        " has lower > upper");
      }
    }
    if (b.owner < 0 || b.owner >= n_players) {
      diags.push_back("block owner " + std::to_string(b.owner) +
                      " is not a player");
    }
  }

  for (int i = 0; i < n_players; ++i) {
    const PlayerProgram& p = instance.player(i);
    if (p.own_block.owner != i) {
      diags.push_back("player " + std::to_string(i) +
                      " own_block.owner mismatch");
    }
    bool found = false;
    for (const auto& b : instance.blocks) {
      if (b.owner == i && b.first == p.own_block.first &&
          b.count == p.own_block.count) {
        found = true;
        break;
      }
    }
    if (!found) {
      diags.push_back("player " + std::to_string(i) +
                      " own_block is not among instance blocks");
    }
    if (p.payoff.dim != total) {
      diags.push_back("player " + std::to_string(i) + " payoff dimension " +
                      std::to_string(p.payoff.dim) + " != " +
                      std::to_string(total));
    }
    for (const auto& [ij, c] : p.payoff.quad) {
      (void)c;
      if (ij.first < 0 || ij.first >= total || ij.second < 0 ||
          ij.second >= total) {
        diags.push_back("player " + std::to_string(i) +
                        " payoff references an out-of-range variable");
        break;
      }
    }
    if (!p.payoff.lin.empty() &&
        (p.payoff.lin.begin()->first < 0 || p.payoff.lin.rbegin()->first >= total)) {
      diags.push_back("player " + std::to_string(i) +
                      " payoff linear term out of range");
    }
    for (const auto& c : p.constraints) {
      if (c.expr.max_var() >= total) {
        diags.push_back("player " + std::to_string(i) +
                        " constraint references an out-of-range variable");
        continue;
      }
      if (!p.coupled) {
        for (const auto& [v, coef] : c.expr.coeffs()) {
          (void)coef;
          if (!p.own_block.contains(v)) {
            diags.push_back("player " + std::to_string(i) +
                            " has coupled=false but a constraint references "
                            "variable " +
                            std::to_string(v) + " outside its block");
            break;
          }
        }
      }
    }
  }
  return diags;
}

}  // namespace lois
