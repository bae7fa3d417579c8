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

#ifndef LOIS_ENCODING_HPP
#define LOIS_ENCODING_HPP

#include <optional>
#include <string>
#include <vector>

#include "lois/conditions.hpp"
#include "lois/model.hpp"

namespace lois {

/// Sparse integer-coefficient linear form.
struct ScaledLinExpr {
  std::map<int, Int> coeffs;
  Int constant{0};

  void add_term(int var, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs.emplace(var, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs.erase(it);
    }
  }

  Int evaluate(const std::vector<long long>& assignment) const {
    Int acc = constant;
    for (const auto& [v, c] : coeffs) {
      acc += c * Int(std::to_string(assignment[static_cast<std::size_t>(v)]));
    }
    return acc;
  }

  friend bool operator==(const ScaledLinExpr& a, const ScaledLinExpr& b) {
    return a.constant == b.constant && a.coeffs == b.coeffs;
  }
};

enum class VarKind { Original, Indicator, Auxiliary };

enum class RowOrigin {
  Feasibility,
  IcAntecedent,
  IcConsequent,
  IcSum,
  BoundGuard,
  ObjectiveLink,
  ExclusionCut,
};

struct EncodedVar {
  long long lower = 0;
  long long upper = 0;
  VarKind kind = VarKind::Original;

  bool is_binary() const { return lower == 0 && upper == 1; }
};

/// `expr >= 0`.
struct EncodedRow {
  ScaledLinExpr expr;
  RowOrigin origin = RowOrigin::Feasibility;

  bool holds_at(const std::vector<long long>& assignment) const {
    return expr.evaluate(assignment) >= 0;
  }
};

/// Pure integer-linear system produced by Big-M re-encoding: original
/// variables keep their indices [0, original_count), indicator and auxiliary
/// variables follow.
struct EncodedSystem {
  std::vector<EncodedVar> variables;
  std::vector<EncodedRow> constraints;
  std::optional<ScaledLinExpr> objective;
  Sense objective_sense = Sense::Minimize;
  /// True objective value = raw integer value / objective_denominator.
  Int objective_denominator{1};
  int original_count = 0;
  /// Branch-value preferences derived from the objective structure:
  /// +1 = try the upper bound first, -1 = lower first. Advisory.
  std::map<int, int> branch_hints;

  int add_var(long long lo, long long hi, VarKind kind) {
    variables.push_back(EncodedVar{lo, hi, kind});
    return static_cast<int>(variables.size()) - 1;
  }

  bool assignment_feasible(const std::vector<long long>& assignment) const;

  /// Variable/constraint totals under the documented box-bounds convention:
  /// auxiliary variables and guard rows (artifacts of non-binary box guards)
  /// are excluded. For all-binary instances these equal the plain totals.
  long long counted_variables() const;
  long long counted_constraints() const;
};

/// Smallest safe Big-M for the expression over the variable boxes:
/// sum |coef| * max(|lo|, |hi|) + |const| + 1.
Int compute_big_m(const ScaledLinExpr& expr, const std::vector<EncodedVar>& vars);

/// Clears denominators; strict `e > 0` becomes `e' - 1 >= 0` after scaling.
ScaledLinExpr scale_inequality(const Inequality& ineq);

struct LicFragment {
  int first_var = 0;  // first introduced binary
  int var_count = 0;
  int first_row = 0;
  int row_count = 0;
};

/// Big-M re-encoding of one linear implication constraint. Introduces one
/// indicator per antecedent/consequent plus the sum row; box guards whose
/// step spans the whole variable range are folded into the sum row as 0/1
/// terms instead (no new variable or row).
LicFragment encode_lic(const ImplicationConstraint& ic, EncodedSystem& system);

/// No-good cut excluding exactly `point` (over original variables). Binary
/// coordinates contribute closed-form terms; wider ones get auxiliary
/// selector binaries with Big-M rows.
void exclusion_cut(const std::vector<long long>& point, EncodedSystem& system);

/// z = x_i * x_j for binary x_i, x_j via z <= x_i, z <= x_j,
/// z >= x_i + x_j - 1. Returns the index of z.
int linearize_binary_product(int i, int j, EncodedSystem& system);

/// Feasibility rows + encoded implication constraints for every condition
/// set, over the given blocks; `plain_feasibility` carries programs that
/// contribute constraints but no optimality conditions (e.g. a leader).
EncodedSystem assemble_from_conditions(
    const std::vector<VarBlock>& blocks,
    const std::vector<std::vector<LinExpr>>& plain_feasibility,
    const std::vector<ConditionSet>& condition_sets,
    const std::optional<QuadraticPayoff>& objective);

/// The order-m system for the whole game, optionally with a welfare
/// objective (linear, or quadratic over binary variables).
EncodedSystem assemble(const IPGInstance& instance, int m,
                       const std::optional<QuadraticPayoff>& objective);

/// LP-format text export, for cross-checking with external solvers.
std::string write_lp(const EncodedSystem& system);

}  // namespace lois

#endif  // LOIS_ENCODING_HPP
