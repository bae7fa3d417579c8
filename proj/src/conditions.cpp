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

#include "lois/conditions.hpp"

#include <sstream>

namespace lois {

LinExpr payoff_delta_difference(const QuadraticPayoff& payoff,
                                const VarBlock& block, const Delta& delta) {
  // f(x+d) - f(x) = x^T Q d + d^T Q x + d^T Q d + q^T d, d constant.
  LinExpr diff;
  Rational constant;
  for (const auto& [ij, c] : payoff.quad) {
    auto [i, j] = ij;
    long long di = 0, dj = 0;
    for (const auto& [offset, step] : delta.steps) {
      int v = block.first + offset;
      if (v == i) di = step;
      if (v == j) dj = step;
    }
    if (dj != 0) diff.add_term(i, c * Rational::from_int64(dj));  // x^T Q d
    if (di != 0) diff.add_term(j, c * Rational::from_int64(di));  // d^T Q x
    if (di != 0 && dj != 0) {
      constant += c * Rational::from_int64(di) * Rational::from_int64(dj);
    }
  }
  for (const auto& [offset, step] : delta.steps) {
    int v = block.first + offset;
    auto it = payoff.lin.find(v);
    if (it != payoff.lin.end()) {
      constant += it->second * Rational::from_int64(step);
    }
  }
  diff.add_constant(constant);
  return diff;
}

Inequality payoff_delta_inequality(const QuadraticPayoff& payoff_min_form,
                                   const VarBlock& block, const Delta& delta) {
  LinExpr diff = payoff_delta_difference(payoff_min_form, block, delta);
  return Inequality{-diff, Strictness::Strict};
}

namespace {

LinExpr substitute_shift(const LinExpr& expr, const VarBlock& block,
                         const Delta& delta) {
  LinExpr out = expr;
  for (const auto& [offset, step] : delta.steps) {
    int v = block.first + offset;
    auto it = expr.coeffs().find(v);
    if (it != expr.coeffs().end()) {
      out.add_constant(it->second * Rational::from_int64(step));
    }
  }
  return out;
}

bool satisfiable_over_box(const Inequality& ineq, const IPGInstance& instance) {
  Rational mx = interval_max(ineq.expr, instance);
  return ineq.strictness == Strictness::Weak ? mx.sign() >= 0 : mx.sign() > 0;
}

}  // namespace

Rational interval_max(const LinExpr& expr, const IPGInstance& instance) {
  Rational acc = expr.constant();
  for (const auto& [v, c] : expr.coeffs()) {
    long long bound = c.sign() > 0 ? instance.upper_of(v) : instance.lower_of(v);
    acc += c * Rational::from_int64(bound);
  }
  return acc;
}

Rational interval_min(const LinExpr& expr, const IPGInstance& instance) {
  Rational acc = expr.constant();
  for (const auto& [v, c] : expr.coeffs()) {
    long long bound = c.sign() > 0 ? instance.lower_of(v) : instance.upper_of(v);
    acc += c * Rational::from_int64(bound);
  }
  return acc;
}

std::vector<Consequent> violated_constraint_disjunction(
    const IPGInstance& instance, int player, const Delta& delta) {
  const PlayerProgram& p = instance.player(player);
  const VarBlock& block = p.own_block;
  std::vector<Consequent> out;

  // Own constraints: g_j(x + delta) < 0, i.e. -g_j(x + delta) > 0.
  for (const LinExpr& g : ge_form_constraints(p)) {
    Consequent c;
    c.ineq = Inequality{-substitute_shift(g, block, delta), Strictness::Strict};
    out.push_back(std::move(c));
  }

  // Box-bound guards for the moved coordinates. A positive step can only
  // leave through the upper bound, a negative one through the lower.
  for (const auto& [offset, step] : delta.steps) {
    int v = block.first + offset;
    LinExpr g;
    if (step > 0) {
      // x_v + step > upper
      g.add_term(v, Rational(1));
      g.add_constant(Rational::from_int64(step - block.upper[static_cast<std::size_t>(offset)]));
    } else {
      // x_v + step < lower
      g.add_term(v, Rational(-1));
      g.add_constant(Rational::from_int64(block.lower[static_cast<std::size_t>(offset)] - step));
    }
    Consequent guard;
    guard.ineq = Inequality{std::move(g), Strictness::Strict};
    guard.bound_guard = true;
    guard.guard_var = v;
    guard.guard_step = step;
    if (!satisfiable_over_box(guard.ineq, instance)) continue;
    LinExpr guard_norm = guard.ineq.expr.normalized();
    bool duplicate = false;
    for (const auto& existing : out) {
      if (existing.ineq.strictness == Strictness::Strict &&
          existing.ineq.expr.normalized() == guard_norm) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.push_back(std::move(guard));
  }
  return out;
}

ConditionSet build_conditions(const IPGInstance& instance, int player, int m) {
  if (m < 1) throw Error(Error::Kind::kInvalidArgument, "order must be >= 1");
  const PlayerProgram& p = instance.player(player);
  ConditionSet set;
  set.player = player;
  set.order = m;
  set.feasibility = ge_form_constraints(p);

  QuadraticPayoff min_form = p.payoff.minimization_form();
  std::vector<Delta> deltas =
      prune_deltas(enumerate_deltas(p.own_block.count, m), p.own_block);
  set.implications.reserve(deltas.size());
  for (const auto& d : deltas) {
    ImplicationConstraint ic;
    ic.player = player;
    ic.delta = d;
    ic.antecedent = payoff_delta_inequality(min_form, p.own_block, d);
    ic.consequents = violated_constraint_disjunction(instance, player, d);
    set.implications.push_back(std::move(ic));
  }
  return set;
}

bool check_point_locally_optimal(const IPGInstance& instance, int player,
                                 const JointPoint& point, int m) {
  if (!instance.in_bounds(point)) return false;
  if (!is_player_feasible(instance, player, point)) return false;
  const PlayerProgram& p = instance.player(player);
  const VarBlock& block = p.own_block;
  Rational value = p.payoff.evaluate(point);
  bool maximize = p.payoff.sense == Sense::Maximize;
  for (const auto& d : enumerate_deltas(block.count, m)) {
    JointPoint moved = apply_delta(point, block, d);
    bool in_box = true;
    for (const auto& [offset, step] : d.steps) {
      (void)step;
      long long v = moved[block.first + offset];
      if (v < block.lower[static_cast<std::size_t>(offset)] ||
          v > block.upper[static_cast<std::size_t>(offset)]) {
        in_box = false;
        break;
      }
    }
    if (!in_box) continue;
    if (!is_player_feasible(instance, player, moved)) continue;
    Rational moved_value = p.payoff.evaluate(moved);
    if (maximize ? moved_value > value : moved_value < value) return false;
  }
  return true;
}

namespace {

std::string render_consequent(const Inequality& ineq,
                              const std::vector<std::string>* names) {
  // ineq is `L + k > 0`; print vars left, constant right. When every
  // coefficient is negative, flip to `-L < k` to match the usual layout.
  LinExpr vars_only = ineq.expr;
  Rational k = vars_only.constant();
  vars_only.add_constant(-k);
  bool all_negative = !vars_only.coeffs().empty();
  for (const auto& [v, c] : vars_only.coeffs()) {
    (void)v;
    if (c.sign() > 0) all_negative = false;
  }
  std::ostringstream out;
  const char* rel = ineq.strictness == Strictness::Strict ? "" : "=";
  if (all_negative) {
    out << (-vars_only).to_string(names) << " <" << rel << " " << k.to_string();
  } else {
    out << vars_only.to_string(names) << " >" << rel << " "
        << (-k).to_string();
  }
  return out.str();
}

}  // namespace

std::string dump_conditions(const ConditionSet& set,
                            const std::vector<std::string>* names) {
  std::ostringstream out;
  out << "conditions for player " << set.player << " (order " << set.order
      << ")\n";
  out << "  feasibility:\n";
  for (const auto& f : set.feasibility) {
    out << "    " << f.to_string(names) << " >= 0\n";
  }
  out << "  implication constraints:\n";
  for (const auto& ic : set.implications) {
    out << "    " << (-ic.antecedent.expr).to_string(names) << " < 0  ->  ";
    bool first = true;
    for (const auto& c : ic.consequents) {
      if (c.bound_guard) continue;
      if (!first) out << " v ";
      out << "(" << render_consequent(c.ineq, names) << ")";
      first = false;
    }
    if (first) out << "false";
    for (const auto& c : ic.consequents) {
      if (!c.bound_guard) continue;
      out << "  [box: " << render_consequent(c.ineq, names) << "]";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace lois
