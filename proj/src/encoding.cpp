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

#include "lois/encoding.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace lois {

bool EncodedSystem::assignment_feasible(
    const std::vector<long long>& assignment) const {
  if (assignment.size() != variables.size()) return false;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (assignment[i] < variables[i].lower || assignment[i] > variables[i].upper)
      return false;
  }
  for (const auto& row : constraints) {
    if (!row.holds_at(assignment)) return false;
  }
  return true;
}

long long EncodedSystem::counted_variables() const {
  long long n = 0;
  for (const auto& v : variables) n += v.kind != VarKind::Auxiliary ? 1 : 0;
  return n;
}

long long EncodedSystem::counted_constraints() const {
  long long n = 0;
  for (const auto& r : constraints) {
    switch (r.origin) {
      case RowOrigin::Feasibility:
      case RowOrigin::IcAntecedent:
      case RowOrigin::IcConsequent:
      case RowOrigin::IcSum:
        ++n;
        break;
      default:
        break;
    }
  }
  return n;
}

Int compute_big_m(const ScaledLinExpr& expr,
                  const std::vector<EncodedVar>& vars) {
  Int m(1);
  for (const auto& [v, c] : expr.coeffs) {
    if (v < 0 || v >= static_cast<int>(vars.size())) {
      throw Error(Error::Kind::kDimensionMismatch,
                  "expression references unknown variable");
    }
    const EncodedVar& var = vars[static_cast<std::size_t>(v)];
    long long lo = var.lower, hi = var.upper;
    long long mag = std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
    Int a;
    mpz_abs(a.get_mpz_t(), c.get_mpz_t());
    m += a * Int(std::to_string(mag));
  }
  Int ca;
  mpz_abs(ca.get_mpz_t(), expr.constant.get_mpz_t());
  m += ca;
  return m;
}

ScaledLinExpr scale_inequality(const Inequality& ineq) {
  Int denom_lcm(1);
  for (const auto& [v, c] : ineq.expr.coeffs()) {
    (void)v;
    denom_lcm = lcm(denom_lcm, c.denominator());
  }
  denom_lcm = lcm(denom_lcm, ineq.expr.constant().denominator());
  ScaledLinExpr out;
  for (const auto& [v, c] : ineq.expr.coeffs()) {
    out.add_term(v, c.numerator() * (denom_lcm / c.denominator()));
  }
  out.constant = ineq.expr.constant().numerator() *
                 (denom_lcm / ineq.expr.constant().denominator());
  if (ineq.strictness == Strictness::Strict) out.constant -= 1;
  return out;
}

namespace {

long long var_width(const EncodedSystem& system, int var) {
  const EncodedVar& v = system.variables[static_cast<std::size_t>(var)];
  return v.upper - v.lower;
}

}  // namespace

LicFragment encode_lic(const ImplicationConstraint& ic, EncodedSystem& system) {
  LicFragment frag;
  frag.first_var = static_cast<int>(system.variables.size());
  frag.first_row = static_cast<int>(system.constraints.size());

  // Scale every part and split consequents into indicator-encoded ones and
  // guards folded into the sum row.
  ScaledLinExpr antecedent = scale_inequality(ic.antecedent);
  for (const auto& [v, c] : antecedent.coeffs) {
    (void)c;
    if (system.variables[static_cast<std::size_t>(v)].kind != VarKind::Original) {
      throw Error(Error::Kind::kNotLinear, "implication constraint references "
                                           "a non-original variable");
    }
  }

  struct Part {
    ScaledLinExpr expr;
    bool guard = false;
  };
  std::vector<Part> encoded_parts;
  std::vector<ScaledLinExpr> absorbed;
  for (const auto& c : ic.consequents) {
    if (c.bound_guard) {
      long long mag = c.guard_step < 0 ? -c.guard_step : c.guard_step;
      if (mag == var_width(system, c.guard_var)) {
        // The guard expression is a 0/1-ranged term over the box; it joins
        // the sum row directly.
        ScaledLinExpr g = scale_inequality(
            Inequality{c.ineq.expr, Strictness::Weak});  // no -1 shift
        absorbed.push_back(std::move(g));
        continue;
      }
      encoded_parts.push_back(Part{scale_inequality(c.ineq), true});
    } else {
      encoded_parts.push_back(Part{scale_inequality(c.ineq), false});
    }
  }

  // One local M per implication constraint.
  Int big_m = compute_big_m(antecedent, system.variables);
  for (const auto& part : encoded_parts) {
    Int m = compute_big_m(part.expr, system.variables);
    if (m > big_m) big_m = m;
  }

  // Antecedent indicator: m0 = 1 forces "no improvement".
  int m0 = system.add_var(0, 1, VarKind::Indicator);
  ScaledLinExpr sum_row;
  sum_row.add_term(m0, Int(1));
  sum_row.constant = -1;

  // antecedent holds <=> E >= 0 (strict already shifted); m0 = 1 => E <= -1.
  {
    ScaledLinExpr row;
    for (const auto& [v, c] : antecedent.coeffs) row.add_term(v, -c);
    row.constant = -antecedent.constant - 1;
    // row so far: -E - 1 >= 0 <=> E <= -1; relax by M when m0 = 0.
    row.constant += big_m;
    row.add_term(m0, -big_m);
    system.constraints.push_back(EncodedRow{std::move(row), RowOrigin::IcAntecedent});
  }

  for (const auto& part : encoded_parts) {
    int mj = system.add_var(0, 1,
                            part.guard ? VarKind::Auxiliary : VarKind::Indicator);
    sum_row.add_term(mj, Int(1));
    ScaledLinExpr row = part.expr;
    row.constant += big_m;
    row.add_term(mj, -big_m);
    system.constraints.push_back(EncodedRow{
        std::move(row), part.guard ? RowOrigin::BoundGuard : RowOrigin::IcConsequent});
  }

  for (const auto& g : absorbed) {
    for (const auto& [v, c] : g.coeffs) sum_row.add_term(v, c);
    sum_row.constant += g.constant;
  }
  system.constraints.push_back(EncodedRow{std::move(sum_row), RowOrigin::IcSum});

  frag.var_count = static_cast<int>(system.variables.size()) - frag.first_var;
  frag.row_count = static_cast<int>(system.constraints.size()) - frag.first_row;
  return frag;
}

void exclusion_cut(const std::vector<long long>& point, EncodedSystem& system) {
  if (static_cast<int>(point.size()) != system.original_count) {
    throw Error(Error::Kind::kDimensionMismatch,
                "exclusion point must cover the original variables");
  }
  ScaledLinExpr sum_row;
  sum_row.constant = -1;
  for (int v = 0; v < system.original_count; ++v) {
    // Copy the bounds: add_var below may reallocate the variable table.
    const long long lower = system.variables[static_cast<std::size_t>(v)].lower;
    const long long upper = system.variables[static_cast<std::size_t>(v)].upper;
    long long x = point[static_cast<std::size_t>(v)];
    if (x < lower || x > upper) {
      throw Error(Error::Kind::kInvalidArgument, "point outside bounds");
    }
    if (lower == upper) continue;  // cannot differ here
    if (upper - lower == 1) {
      if (x == lower) {
        // differs <=> x_v = upper: term (x_v - lower)
        sum_row.add_term(v, Int(1));
        sum_row.constant += Int(std::to_string(-lower));
      } else {
        // differs <=> x_v = lower: term (upper - x_v)
        sum_row.add_term(v, Int(-1));
        sum_row.constant += Int(std::to_string(upper));
      }
      continue;
    }
    // Wide domain: one selector per admissible side.
    if (x < upper) {
      int s = system.add_var(0, 1, VarKind::Auxiliary);
      ScaledLinExpr row;  // x_v - (x+1) + (1-s)M >= 0
      row.add_term(v, Int(1));
      row.constant = Int(std::to_string(-(x + 1)));
      Int m = compute_big_m(row, system.variables);
      row.constant += m;
      row.add_term(s, -m);
      system.constraints.push_back(EncodedRow{std::move(row), RowOrigin::ExclusionCut});
      sum_row.add_term(s, Int(1));
    }
    if (x > lower) {
      int s = system.add_var(0, 1, VarKind::Auxiliary);
      ScaledLinExpr row;  // (x-1) - x_v + (1-s)M >= 0
      row.add_term(v, Int(-1));
      row.constant = Int(std::to_string(x - 1));
      Int m = compute_big_m(row, system.variables);
      row.constant += m;
      row.add_term(s, -m);
      system.constraints.push_back(EncodedRow{std::move(row), RowOrigin::ExclusionCut});
      sum_row.add_term(s, Int(1));
    }
  }
  system.constraints.push_back(EncodedRow{std::move(sum_row), RowOrigin::ExclusionCut});
}

int linearize_binary_product(int i, int j, EncodedSystem& system) {
  const auto& vi = system.variables.at(static_cast<std::size_t>(i));
  const auto& vj = system.variables.at(static_cast<std::size_t>(j));
  if (!vi.is_binary() || !vj.is_binary()) {
    throw Error(Error::Kind::kInvalidArgument,
                "product linearization requires binary variables");
  }
  int z = system.add_var(0, 1, VarKind::Auxiliary);
  ScaledLinExpr r1;  // x_i - z >= 0
  r1.add_term(i, Int(1));
  r1.add_term(z, Int(-1));
  ScaledLinExpr r2;  // x_j - z >= 0
  r2.add_term(j, Int(1));
  r2.add_term(z, Int(-1));
  ScaledLinExpr r3;  // z - x_i - x_j + 1 >= 0
  r3.add_term(z, Int(1));
  r3.add_term(i, Int(-1));
  r3.add_term(j, Int(-1));
  r3.constant = 1;
  system.constraints.push_back(EncodedRow{std::move(r1), RowOrigin::ObjectiveLink});
  system.constraints.push_back(EncodedRow{std::move(r2), RowOrigin::ObjectiveLink});
  system.constraints.push_back(EncodedRow{std::move(r3), RowOrigin::ObjectiveLink});
  return z;
}

namespace {

void append_feasibility(const std::vector<LinExpr>& rows, EncodedSystem& system) {
  for (const auto& g : rows) {
    system.constraints.push_back(EncodedRow{
        scale_inequality(Inequality{g, Strictness::Weak}), RowOrigin::Feasibility});
  }
}

/// Encodes one small group of binary variables linked by quadratic terms as a
/// single auxiliary that equals the group's payoff contribution at every 0/1
/// assignment (a pair of big-span rows per assignment). The interval bound of
/// the auxiliary is then the exact per-group value range, which keeps
/// branch-and-bound pruning sharp; pairwise product variables would overshoot.
struct CellGroup {
  std::vector<int> vars;                      // sorted member variables
  std::map<std::pair<int, int>, Rational> quad;  // off-diagonal terms inside
  std::map<int, Rational> lin;                // member linear + diagonal terms
};

std::pair<int, Rational> encode_cell_group(const CellGroup& group, Sense sense,
                                           EncodedSystem& system) {
  int k = static_cast<int>(group.vars.size());
  int cells = 1 << k;
  std::vector<Rational> value(static_cast<std::size_t>(cells));
  Rational lo, hi;
  for (int a = 0; a < cells; ++a) {
    Rational v;
    for (const auto& [ij, c] : group.quad) {
      int bi = 0, bj = 0;
      for (int t = 0; t < k; ++t) {
        if (group.vars[static_cast<std::size_t>(t)] == ij.first) bi = (a >> t) & 1;
        if (group.vars[static_cast<std::size_t>(t)] == ij.second) bj = (a >> t) & 1;
      }
      if (bi != 0 && bj != 0) v += c;
    }
    for (const auto& [var, c] : group.lin) {
      for (int t = 0; t < k; ++t) {
        if (group.vars[static_cast<std::size_t>(t)] == var && ((a >> t) & 1) != 0) {
          v += c;
        }
      }
    }
    value[static_cast<std::size_t>(a)] = v;
    if (a == 0 || v < lo) lo = v;
    if (a == 0 || v > hi) hi = v;
  }

  // w carries the group value in units of 1 / unit_denominator.
  Int unit(1);
  for (const auto& v : value) unit = lcm(unit, v.denominator());
  Rational w_unit(Int(1), unit);
  int w = system.add_var(mpz_get_si(Int((lo * Rational(unit)).numerator()).get_mpz_t()),
                         mpz_get_si(Int((hi * Rational(unit)).numerator()).get_mpz_t()),
                         VarKind::Auxiliary);
  Rational span = hi - lo;
  for (int a = 0; a < cells; ++a) {
    LinExpr mismatch;  // counts coordinates where x differs from assignment a
    for (int t = 0; t < k; ++t) {
      int var = group.vars[static_cast<std::size_t>(t)];
      if (((a >> t) & 1) != 0) {
        mismatch.add_term(var, Rational(-1));
        mismatch.add_constant(Rational(1));
      } else {
        mismatch.add_term(var, Rational(1));
      }
    }
    const Rational& v = value[static_cast<std::size_t>(a)];
    // v + span * mismatch - w >= 0 and w - v + span * mismatch >= 0: at the
    // matching assignment both collapse to w = v; elsewhere they are slack.
    LinExpr upper = mismatch * span;
    upper.add_constant(v);
    upper.add_term(w, -w_unit);
    system.constraints.push_back(EncodedRow{
        scale_inequality(Inequality{upper, Strictness::Weak}),
        RowOrigin::ObjectiveLink});
    LinExpr lower = mismatch * span;
    lower.add_constant(-v);
    lower.add_term(w, w_unit);
    system.constraints.push_back(EncodedRow{
        scale_inequality(Inequality{lower, Strictness::Weak}),
        RowOrigin::ObjectiveLink});
  }

  // Marginal rows: once a single member variable is fixed, the bounds of w
  // tighten to that slice's value range rather than waiting for the whole
  // group. These keep the search's interval bound sharp mid-branch.
  for (int t = 0; t < k; ++t) {
    int var = group.vars[static_cast<std::size_t>(t)];
    Rational hint_value[2];
    for (int b = 0; b < 2; ++b) {
      Rational slice_hi, slice_lo;
      bool first = true;
      for (int a = 0; a < cells; ++a) {
        if (((a >> t) & 1) != b) continue;
        const Rational& v = value[static_cast<std::size_t>(a)];
        if (first || v > slice_hi) slice_hi = v;
        if (first || v < slice_lo) slice_lo = v;
        first = false;
      }
      hint_value[b] = sense == Sense::Maximize ? slice_hi : -slice_lo;
      LinExpr off;  // 0 when x_var == b, 1 otherwise
      if (b == 1) {
        off.add_term(var, Rational(-1));
        off.add_constant(Rational(1));
      } else {
        off.add_term(var, Rational(1));
      }
      LinExpr cap = off * (hi - slice_hi);  // w <= slice_hi + (hi - slice_hi) off
      cap.add_constant(slice_hi);
      cap.add_term(w, -w_unit);
      system.constraints.push_back(EncodedRow{
          scale_inequality(Inequality{cap, Strictness::Weak}),
          RowOrigin::ObjectiveLink});
      LinExpr floor = off * (slice_lo - lo);  // w >= slice_lo - (slice_lo - lo) off
      floor.add_constant(-slice_lo);
      floor.add_term(w, w_unit);
      system.constraints.push_back(EncodedRow{
          scale_inequality(Inequality{floor, Strictness::Weak}),
          RowOrigin::ObjectiveLink});
    }
    // Prefer branching into the slice that can still reach the better value.
    if (hint_value[1] != hint_value[0]) {
      system.branch_hints[var] = hint_value[1] > hint_value[0] ? 1 : -1;
    }
  }
  return {w, w_unit};
}

void set_objective(const QuadraticPayoff& objective, EncodedSystem& system) {
  // Build the rational objective over encoded variables. Diagonal terms use
  // x^2 = x on binaries. Off-diagonal terms are grouped into connected
  // components; small components (up to 3 variables) become exact cell
  // auxiliaries, larger ones fall back to pairwise product variables.
  for (const auto& [ij, c] : objective.quad) {
    (void)c;
    for (int v : {ij.first, ij.second}) {
      if (!system.variables.at(static_cast<std::size_t>(v)).is_binary() &&
          ij.first != ij.second) {
        throw Error(Error::Kind::kNotLinear,
                    "quadratic objective over a non-binary variable");
      }
    }
  }

  // Union-find over variables joined by off-diagonal terms.
  std::map<int, int> parent;
  std::function<int(int)> find = [&](int v) {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    int root = find(it->second);
    it->second = root;
    return root;
  };
  auto unite = [&](int a, int b) {
    parent.emplace(a, a);
    parent.emplace(b, b);
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };
  for (const auto& [ij, c] : objective.quad) {
    (void)c;
    if (ij.first != ij.second) unite(ij.first, ij.second);
  }

  std::map<int, CellGroup> groups;  // root -> group
  for (const auto& [v, r] : parent) {
    (void)r;
    groups[find(v)].vars.push_back(v);
  }
  for (auto& [root, group] : groups) {
    (void)root;
    std::sort(group.vars.begin(), group.vars.end());
  }

  LinExpr flat(objective.offset);
  auto group_of = [&](int v) -> CellGroup* {
    auto it = parent.find(v);
    if (it == parent.end()) return nullptr;
    return &groups.at(find(v));
  };
  for (const auto& [ij, c] : objective.quad) {
    auto [i, j] = ij;
    if (i == j) {
      if (!system.variables.at(static_cast<std::size_t>(i)).is_binary()) {
        throw Error(Error::Kind::kNotLinear,
                    "quadratic objective over a non-binary variable");
      }
      CellGroup* g = group_of(i);
      if (g != nullptr && g->vars.size() <= 3) {
        auto [it, inserted] = g->lin.emplace(i, c);
        if (!inserted) it->second += c;
      } else {
        flat.add_term(i, c);
      }
      continue;
    }
    CellGroup* g = group_of(i);
    if (g->vars.size() <= 3) {
      auto key = std::minmax(i, j);
      auto [it, inserted] = g->quad.emplace(key, c);
      if (!inserted) it->second += c;
    }
  }
  for (const auto& [i, c] : objective.lin) {
    CellGroup* g = group_of(i);
    if (g != nullptr && g->vars.size() <= 3) {
      auto [it, inserted] = g->lin.emplace(i, c);
      if (!inserted) it->second += c;
    } else {
      flat.add_term(i, c);
    }
  }

  // Emit cell auxiliaries for the small components, product variables for
  // oversized ones.
  std::map<std::pair<int, int>, int> product_vars;
  for (auto& [root, group] : groups) {
    (void)root;
    if (group.vars.size() <= 3) {
      auto [w, unit] = encode_cell_group(group, objective.sense, system);
      flat.add_term(w, unit);
    }
  }
  for (const auto& [ij, c] : objective.quad) {
    auto [i, j] = ij;
    if (i == j) continue;
    CellGroup* g = group_of(i);
    if (g->vars.size() <= 3) continue;  // handled as a cell group
    auto key = std::minmax(i, j);
    auto it = product_vars.find(key);
    if (it == product_vars.end()) {
      int z = linearize_binary_product(key.first, key.second, system);
      it = product_vars.emplace(key, z).first;
    }
    flat.add_term(it->second, c);
  }

  Int denom_lcm(1);
  for (const auto& [v, c] : flat.coeffs()) {
    (void)v;
    denom_lcm = lcm(denom_lcm, c.denominator());
  }
  denom_lcm = lcm(denom_lcm, flat.constant().denominator());
  ScaledLinExpr scaled;
  for (const auto& [v, c] : flat.coeffs()) {
    scaled.add_term(v, c.numerator() * (denom_lcm / c.denominator()));
  }
  scaled.constant = flat.constant().numerator() *
                    (denom_lcm / flat.constant().denominator());
  system.objective = std::move(scaled);
  system.objective_sense = objective.sense;
  system.objective_denominator = denom_lcm;
}

}  // namespace

EncodedSystem assemble_from_conditions(
    const std::vector<VarBlock>& blocks,
    const std::vector<std::vector<LinExpr>>& plain_feasibility,
    const std::vector<ConditionSet>& condition_sets,
    const std::optional<QuadraticPayoff>& objective) {
  EncodedSystem system;
  std::vector<VarBlock> ordered = blocks;
  std::sort(ordered.begin(), ordered.end(),
            [](const VarBlock& a, const VarBlock& b) { return a.first < b.first; });
  for (const auto& b : ordered) {
    if (b.first != static_cast<int>(system.variables.size())) {
      throw Error(Error::Kind::kInvalidArgument,
                  "blocks do not partition the joint vector");
    }
    for (int k = 0; k < b.count; ++k) {
      system.add_var(b.lower[static_cast<std::size_t>(k)],
                     b.upper[static_cast<std::size_t>(k)], VarKind::Original);
    }
  }
  system.original_count = static_cast<int>(system.variables.size());

  for (const auto& rows : plain_feasibility) append_feasibility(rows, system);
  for (const auto& set : condition_sets) {
    append_feasibility(set.feasibility, system);
    for (const auto& ic : set.implications) encode_lic(ic, system);
  }
  if (objective.has_value()) set_objective(*objective, system);
  return system;
}

EncodedSystem assemble(const IPGInstance& instance, int m,
                       const std::optional<QuadraticPayoff>& objective) {
  auto diags = validate(instance);
  if (!diags.empty()) {
    throw Error(Error::Kind::kInvalidArgument,
                "invalid instance: " + diags.front());
  }
  std::vector<ConditionSet> sets;
  sets.reserve(instance.players.size());
  for (int i = 0; i < instance.player_count(); ++i) {
    sets.push_back(build_conditions(instance, i, m));
  }
  return assemble_from_conditions(instance.blocks, {}, sets, objective);
}

std::string write_lp(const EncodedSystem& system) {
  auto var_name = [&](int v) {
    const EncodedVar& var = system.variables[static_cast<std::size_t>(v)];
    const char* prefix = var.kind == VarKind::Original
                             ? "x"
                             : (var.kind == VarKind::Indicator ? "m" : "z");
    return prefix + std::to_string(v);
  };
  auto render = [&](const ScaledLinExpr& e, std::ostringstream& out) {
    bool first = true;
    for (const auto& [v, c] : e.coeffs) {
      Int a;
      mpz_abs(a.get_mpz_t(), c.get_mpz_t());
      if (first) {
        if (c < 0) out << "- ";
        first = false;
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      if (a != 1) out << a.get_str() << " ";
      out << var_name(v);
    }
    if (first) out << "0";
  };
  std::ostringstream out;
  out << "\\ integer linear system export\n";
  if (system.objective.has_value()) {
    out << (system.objective_sense == Sense::Maximize ? "Maximize" : "Minimize")
        << "\n obj: ";
    render(*system.objective, out);
    out << "\n";
  } else {
    out << "Minimize\n obj: 0\n";
  }
  out << "Subject To\n";
  for (std::size_t i = 0; i < system.constraints.size(); ++i) {
    const auto& row = system.constraints[i];
    out << " c" << i << ": ";
    render(row.expr, out);
    out << " >= " << Int(-row.expr.constant).get_str() << "\n";
  }
  out << "Bounds\n";
  for (std::size_t v = 0; v < system.variables.size(); ++v) {
    const auto& var = system.variables[v];
    out << " " << var.lower << " <= " << var_name(static_cast<int>(v)) << " <= "
        << var.upper << "\n";
  }
  out << "Generals\n";
  for (std::size_t v = 0; v < system.variables.size(); ++v) {
    out << " " << var_name(static_cast<int>(v));
    if ((v + 1) % 10 == 0) out << "\n";
  }
  out << "\nEnd\n";
  return out.str();
}

}  // namespace lois
