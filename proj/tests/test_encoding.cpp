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

#include <set>

#include "doctest.h"
#include "lois/cng.hpp"
#include "lois/encoding.hpp"
#include "test_util.hpp"

using namespace lois;
using namespace lois::testutil;

namespace {

EncodedSystem box_system(std::vector<std::pair<long long, long long>> bounds) {
  EncodedSystem sys;
  for (const auto& [lo, hi] : bounds) sys.add_var(lo, hi, VarKind::Original);
  sys.original_count = static_cast<int>(sys.variables.size());
  return sys;
}

LinExpr expr_of(std::initializer_list<std::pair<int, long long>> terms,
                long long constant) {
  LinExpr e;
  for (const auto& [v, c] : terms) e.add_term(v, Rational::from_int64(c));
  e.add_constant(Rational::from_int64(constant));
  return e;
}

/// True iff some indicator assignment completes `originals` to a feasible
/// point of the system, by brute force over all non-original variables.
bool projection_feasible(const EncodedSystem& sys,
                         const std::vector<long long>& originals) {
  int extra = static_cast<int>(sys.variables.size()) - sys.original_count;
  std::vector<long long> assignment = originals;
  assignment.resize(sys.variables.size(), 0);
  for (long long mask = 0; mask < (1LL << extra); ++mask) {
    for (int k = 0; k < extra; ++k) {
      assignment[static_cast<std::size_t>(sys.original_count + k)] =
          (mask >> k) & 1;
    }
    if (sys.assignment_feasible(assignment)) return true;
  }
  return false;
}

void for_each_original_point(const EncodedSystem& sys,
                             const std::function<void(std::vector<long long>&)>& fn) {
  std::vector<long long> p(static_cast<std::size_t>(sys.original_count));
  for (int v = 0; v < sys.original_count; ++v) {
    p[static_cast<std::size_t>(v)] = sys.variables[static_cast<std::size_t>(v)].lower;
  }
  while (true) {
    fn(p);
    int v = 0;
    for (; v < sys.original_count; ++v) {
      auto idx = static_cast<std::size_t>(v);
      if (p[idx] < sys.variables[idx].upper) {
        ++p[idx];
        break;
      }
      p[idx] = sys.variables[idx].lower;
    }
    if (v == sys.original_count) return;
  }
}

}  // namespace

TEST_CASE("big-M from interval arithmetic") {
  EncodedSystem sys = box_system({{0, 1}, {0, 1}});
  ScaledLinExpr e;
  e.add_term(0, Int(2));
  e.add_term(1, Int(2));
  e.constant = 1;
  CHECK(compute_big_m(e, sys.variables) == 6);

  ScaledLinExpr zero;
  CHECK(compute_big_m(zero, sys.variables) == 1);

  EncodedSystem sys2 = box_system({{-5, 5}});
  ScaledLinExpr e2;
  e2.add_term(0, Int(1));
  e2.constant = -4;
  CHECK(compute_big_m(e2, sys2.variables) == 10);
}

TEST_CASE("integer scaling of strict inequalities") {
  // (1/2)x - 1/3 > 0 scales to 3x - 2 >= 1, i.e. 3x - 3 >= 0.
  LinExpr e;
  e.add_term(0, Rational(Int(1), Int(2)));
  e.add_constant(Rational(Int(-1), Int(3)));
  ScaledLinExpr s = scale_inequality(Inequality{e, Strictness::Strict});
  CHECK(s.coeffs.at(0) == 3);
  CHECK(s.constant == -3);
  ScaledLinExpr w = scale_inequality(Inequality{e, Strictness::Weak});
  CHECK(w.constant == -2);
}

TEST_CASE("one implication constraint encodes to the known fragment") {
  // 2x + 2y + 1 < 0  ->  x < 0 over x, y in [-10, 10].
  EncodedSystem sys = box_system({{-10, 10}, {-10, 10}});
  ImplicationConstraint ic;
  ic.antecedent = Inequality{-expr_of({{0, 2}, {1, 2}}, 1), Strictness::Strict};
  Consequent c;
  c.ineq = Inequality{expr_of({{0, -1}}, 0), Strictness::Strict};
  ic.consequents.push_back(c);

  LicFragment frag = encode_lic(ic, sys);
  CHECK(frag.var_count == 2);  // m0, m1
  CHECK(frag.row_count == 3);  // antecedent, consequent, sum

  // Local M = 43: |2|*10 + |2|*10 + |(-2x-2y-2)const| + 1.
  const Int m(43);
  const auto& antecedent = sys.constraints[0].expr;
  CHECK(antecedent.coeffs.at(0) == 2);
  CHECK(antecedent.coeffs.at(1) == 2);
  CHECK(antecedent.coeffs.at(2) == -m);  // m0
  CHECK(antecedent.constant == Int(1) + m);
  const auto& consequent = sys.constraints[1].expr;
  CHECK(consequent.coeffs.at(0) == -1);
  CHECK(consequent.coeffs.at(3) == -m);  // m1
  CHECK(consequent.constant == Int(-1) + m);
  const auto& sum = sys.constraints[2].expr;
  CHECK(sum.coeffs.at(2) == 1);
  CHECK(sum.coeffs.at(3) == 1);
  CHECK(sum.constant == -1);

  // Projection equals direct truth over the whole box, all four indicator
  // assignments tried exhaustively.
  for_each_original_point(sys, [&](std::vector<long long>& p) {
    JointPoint jp;
    jp.values = p;
    CHECK(projection_feasible(sys, p) == ic.holds_at(jp));
  });
}

TEST_CASE("vacuous antecedent keeps every point") {
  EncodedSystem sys = box_system({{-3, 3}});
  ImplicationConstraint ic;
  ic.antecedent = Inequality{LinExpr(Rational(0)), Strictness::Strict};  // 0 > 0
  encode_lic(ic, sys);
  for_each_original_point(sys, [&](std::vector<long long>& p) {
    CHECK(projection_feasible(sys, p));
  });
}

TEST_CASE("two consequents produce three binaries and four rows") {
  EncodedSystem sys = box_system({{1, 10}, {-5, 5}});
  ImplicationConstraint ic;
  ic.antecedent = Inequality{-expr_of({{0, 3}, {1, 2}}, 1), Strictness::Strict};
  Consequent hi;
  hi.ineq = Inequality{expr_of({{1, 1}}, -4), Strictness::Strict};
  Consequent lo;
  lo.ineq = Inequality{expr_of({{1, -1}}, -6), Strictness::Strict};
  ic.consequents = {hi, lo};
  LicFragment frag = encode_lic(ic, sys);
  CHECK(frag.var_count == 3);
  CHECK(frag.row_count == 4);
  for_each_original_point(sys, [&](std::vector<long long>& p) {
    JointPoint jp;
    jp.values = p;
    CHECK(projection_feasible(sys, p) == ic.holds_at(jp));
  });
}

TEST_CASE("scaling an antecedent leaves the projected set unchanged") {
  for (long long k : {2, 7}) {
    EncodedSystem plain = box_system({{-4, 4}, {-4, 4}});
    EncodedSystem scaled = box_system({{-4, 4}, {-4, 4}});
    ImplicationConstraint ic;
    ic.antecedent = Inequality{-expr_of({{0, 2}, {1, -3}}, 1), Strictness::Strict};
    Consequent c;
    c.ineq = Inequality{expr_of({{0, -1}}, 1), Strictness::Strict};
    ic.consequents.push_back(c);
    ImplicationConstraint ic_scaled = ic;
    ic_scaled.antecedent.expr *= Rational::from_int64(k);
    encode_lic(ic, plain);
    encode_lic(ic_scaled, scaled);
    for_each_original_point(plain, [&](std::vector<long long>& p) {
      CHECK(projection_feasible(plain, p) == projection_feasible(scaled, p));
    });
  }
}

TEST_CASE("big-M rows are slack when their indicator is off") {
  IPGInstance inst = demo_instance();
  EncodedSystem sys = assemble(inst, 1, std::nullopt);
  for (const auto& row : sys.constraints) {
    bool big_m_row = row.origin == RowOrigin::IcAntecedent ||
                     row.origin == RowOrigin::IcConsequent ||
                     row.origin == RowOrigin::BoundGuard;
    if (!big_m_row) continue;
    // With the indicator at zero the row must hold for every box point:
    // check by interval arithmetic over the original variables.
    Int min_value = row.expr.constant;
    for (const auto& [v, c] : row.expr.coeffs) {
      const auto& var = sys.variables[static_cast<std::size_t>(v)];
      if (var.kind != VarKind::Original) {
        CHECK(c < 0);  // the -M * indicator term
        continue;      // indicator at zero contributes nothing
      }
      min_value += c * Int(std::to_string(c > 0 ? var.lower : var.upper));
    }
    CHECK(min_value >= 0);
  }
}

TEST_CASE("exclusion cuts") {
  SUBCASE("binary closed form") {
    EncodedSystem sys = box_system({{0, 1}, {0, 1}, {0, 1}});
    exclusion_cut({1, 0, 1}, sys);
    REQUIRE(sys.constraints.size() == 1);
    const auto& row = sys.constraints[0].expr;
    CHECK(row.coeffs.at(0) == -1);
    CHECK(row.coeffs.at(1) == 1);
    CHECK(row.coeffs.at(2) == -1);
    CHECK(row.constant == 1);  // (1-x0)+x1+(1-x2) >= 1
    CHECK(sys.variables.size() == 3);  // no auxiliaries
  }

  SUBCASE("wide box removes exactly one point") {
    EncodedSystem sys = box_system({{-5, 5}, {-5, 5}});
    exclusion_cut({1, -1}, sys);
    int kept = 0;
    for_each_original_point(sys, [&](std::vector<long long>& p) {
      bool feasible = projection_feasible(sys, p);
      if (feasible) ++kept;
      CHECK(feasible == !(p[0] == 1 && p[1] == -1));
    });
    CHECK(kept == 120);
  }

  SUBCASE("two cuts remove exactly two points") {
    EncodedSystem sys = box_system({{-5, 5}, {-5, 5}});
    exclusion_cut({1, -1}, sys);
    exclusion_cut({0, 0}, sys);
    for_each_original_point(sys, [&](std::vector<long long>& p) {
      bool excluded = (p[0] == 1 && p[1] == -1) || (p[0] == 0 && p[1] == 0);
      CHECK(projection_feasible(sys, p) == !excluded);
    });
  }
}

TEST_CASE("binary product linearization") {
  EncodedSystem sys = box_system({{0, 1}, {0, 1}});
  int z = linearize_binary_product(0, 1, sys);
  for (long long x0 : {0, 1}) {
    for (long long x1 : {0, 1}) {
      int viable = -1;
      for (long long zv : {0, 1}) {
        if (sys.assignment_feasible({x0, x1, zv})) {
          CHECK(viable == -1);  // exactly one z value admissible
          viable = static_cast<int>(zv);
        }
      }
      CHECK(viable == static_cast<int>(x0 * x1));
    }
  }
  CHECK(sys.variables[static_cast<std::size_t>(z)].kind == VarKind::Auxiliary);

  EncodedSystem wide = box_system({{0, 2}, {0, 1}});
  CHECK_THROWS_AS(linearize_binary_product(0, 1, wide), Error);
}

TEST_CASE("assembled demo system projects onto the local-optimum set") {
  IPGInstance inst = demo_instance();
  EncodedSystem sys = assemble(inst, 1, std::nullopt);

  // Reference: the exhaustive test-side scan finds both points.
  auto expected = as_set(oracle_lois_set(inst, 1));
  CHECK(expected == std::set<std::vector<long long>>{{1, -1}, {5, -5}});

  std::set<std::vector<long long>> projected;
  for_each_original_point(sys, [&](std::vector<long long>& p) {
    if (projection_feasible(sys, p)) projected.insert(p);
  });
  CHECK(projected == expected);
}

TEST_CASE("assembled sizes match the closed-form estimate") {
  // All-binary game: plain totals equal the estimate exactly.
  CngInstance cng = small_cng(7, 10);
  IPGInstance ipg = to_ipg(cng);
  EncodedSystem sys = assemble(ipg, 1, std::nullopt);
  SizeEstimate est = size_estimate(ipg);
  CHECK(static_cast<long long>(sys.variables.size()) == est.variables);
  CHECK(static_cast<long long>(sys.constraints.size()) == est.constraints);
  CHECK(sys.counted_variables() == est.variables);
  CHECK(sys.counted_constraints() == est.constraints);

  // Demo game: one wide-box guard becomes an auxiliary; the documented
  // counting convention excludes it.
  IPGInstance demo = demo_instance();
  EncodedSystem demo_sys = assemble(demo, 1, std::nullopt);
  SizeEstimate demo_est = size_estimate(demo);
  CHECK(demo_sys.counted_variables() == demo_est.variables);
  CHECK(demo_sys.counted_constraints() == demo_est.constraints);
  CHECK(static_cast<long long>(demo_sys.variables.size()) == demo_est.variables + 1);
  CHECK(static_cast<long long>(demo_sys.constraints.size()) ==
        demo_est.constraints + 1);
}

TEST_CASE("quadratic objectives over non-binary variables are rejected") {
  IPGInstance inst = demo_instance();
  QuadraticPayoff w;
  w.dim = 2;
  w.add_quad(0, 1, Rational(1));
  w.sense = Sense::Maximize;
  CHECK_THROWS_AS(assemble(inst, 1, w), Error);
}

TEST_CASE("lp export is stable") {
  EncodedSystem sys = box_system({{0, 1}, {0, 1}});
  ImplicationConstraint ic;
  ic.antecedent = Inequality{-expr_of({{0, 2}, {1, 2}}, 1), Strictness::Strict};
  Consequent c;
  c.ineq = Inequality{expr_of({{0, -1}}, 0), Strictness::Strict};
  ic.consequents.push_back(c);
  encode_lic(ic, sys);
  // Local M is 7 here: 2 + 2 + |const -2| + 1 over the unit box.
  std::string lp = write_lp(sys);
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("c0: 2 x0 + 2 x1 - 7 m2 >= -8") != std::string::npos);
  CHECK(write_lp(sys) == lp);
}
