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

#ifndef LOIS_CONDITIONS_HPP
#define LOIS_CONDITIONS_HPP

#include <string>
#include <vector>

#include "lois/model.hpp"
#include "lois/neighborhood.hpp"

namespace lois {

enum class Strictness { Weak, Strict };

/// `expr >= 0` (Weak) or `expr > 0` (Strict).
struct Inequality {
  LinExpr expr;
  Strictness strictness = Strictness::Weak;

  bool holds_at(const JointPoint& point) const {
    int s = expr.evaluate(point).sign();
    return strictness == Strictness::Weak ? s >= 0 : s > 0;
  }
};

/// One disjunct on the right-hand side of an implication constraint: a reason
/// the shifted point is infeasible. Either a player constraint violated by
/// the move, or the move leaving the variable box (bound_guard).
struct Consequent {
  Inequality ineq;
  bool bound_guard = false;
  int guard_var = -1;        // joint index, guards only
  long long guard_step = 0;  // step applied to that variable, guards only
};

/// antecedent holds  =>  at least one consequent holds. The antecedent is the
/// strict improving-move inequality; all parts are linear for quadratic
/// payoffs with linear constraints.
struct ImplicationConstraint {
  Inequality antecedent;
  std::vector<Consequent> consequents;
  int player = 0;
  Delta delta;

  bool holds_at(const JointPoint& point) const {
    if (!antecedent.holds_at(point)) return true;
    for (const auto& c : consequents) {
      if (c.ineq.holds_at(point)) return true;
    }
    return false;
  }

  int own_consequent_count() const {
    int n = 0;
    for (const auto& c : consequents) n += c.bound_guard ? 0 : 1;
    return n;
  }
};

/// Per-player local-optimality conditions of a given order: feasibility rows
/// plus one implication constraint per pruned deviation.
struct ConditionSet {
  int player = 0;
  int order = 1;
  std::vector<LinExpr> feasibility;  // each means expr >= 0
  std::vector<ImplicationConstraint> implications;

  bool holds_at(const JointPoint& point) const {
    for (const auto& f : feasibility) {
      if (f.evaluate(point).sign() < 0) return false;
    }
    for (const auto& ic : implications) {
      if (!ic.holds_at(point)) return false;
    }
    return true;
  }
};

/// The strict inequality equivalent to f(x+delta) - f(x) < 0 for a quadratic
/// payoff in minimization form: delta^T(Q+Q^T)x + delta^TQdelta + q^Tdelta < 0.
/// Returned in canonical `expr > 0` form with expr = -(f(x+delta)-f(x)).
Inequality payoff_delta_inequality(const QuadraticPayoff& payoff_min_form,
                                   const VarBlock& block, const Delta& delta);

/// f(x+delta) - f(x) as a LinExpr (minimization form assumed).
LinExpr payoff_delta_difference(const QuadraticPayoff& payoff_min_form,
                                const VarBlock& block, const Delta& delta);

/// The disjunction of per-constraint violations of the shifted point: one
/// consequent g_j(x+delta) < 0 per ge-form player constraint, plus box-bound
/// guards for the moved coordinates. Guards duplicating an own-constraint
/// consequent or unsatisfiable over the box are dropped; own-constraint
/// consequents are always kept.
std::vector<Consequent> violated_constraint_disjunction(
    const IPGInstance& instance, int player, const Delta& delta);

/// Feasibility rows + implication constraints for one player at order m.
ConditionSet build_conditions(const IPGInstance& instance, int player, int m);

/// Semantic oracle for the same property, straight from the definition: the
/// point is feasible and no in-box feasible deviation of L1 norm <= m strictly
/// improves the player's payoff. Shares no logic with condition generation or
/// encoding.
bool check_point_locally_optimal(const IPGInstance& instance, int player,
                                 const JointPoint& point, int m);

/// Max / min of the expression over the instance's variable boxes.
Rational interval_max(const LinExpr& expr, const IPGInstance& instance);
Rational interval_min(const LinExpr& expr, const IPGInstance& instance);

/// Human-readable listing; own-constraint consequents print inline, box
/// guards print as trailing annotated terms.
std::string dump_conditions(const ConditionSet& set,
                            const std::vector<std::string>* names = nullptr);

}  // namespace lois

#endif  // LOIS_CONDITIONS_HPP
