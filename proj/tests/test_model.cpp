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

#include "doctest.h"
#include "lois/cng.hpp"
#include "lois/model.hpp"
#include "test_util.hpp"

using namespace lois;
using namespace lois::testutil;

namespace {

/// Naive dense recomputation of x^T Q x + q^T x + r, independent of the
/// sparse evaluation path.
Rational naive_payoff(const QuadraticPayoff& payoff, const JointPoint& point) {
  int n = payoff.dim;
  std::vector<std::vector<Rational>> q(
      static_cast<std::size_t>(n),
      std::vector<Rational>(static_cast<std::size_t>(n)));
  for (const auto& [ij, c] : payoff.quad) {
    q[static_cast<std::size_t>(ij.first)][static_cast<std::size_t>(ij.second)] = c;
  }
  Rational acc = payoff.offset;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc += q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             Rational::from_int64(point[i]) * Rational::from_int64(point[j]);
    }
  }
  for (const auto& [i, c] : payoff.lin) acc += c * Rational::from_int64(point[i]);
  return acc;
}

}  // namespace

TEST_CASE("payoff evaluation on the demo game") {
  IPGInstance inst = demo_instance();
  JointPoint p{{1, -1}};
  CHECK(evaluate_payoff(inst, 0, p) == Rational(-1));
  CHECK(evaluate_payoff(inst, 1, p) == Rational(0));
  CHECK(evaluate_payoff(inst, 1, p) == naive_payoff(inst.player(1).payoff, p));

  QuadraticPayoff zero;
  zero.dim = 2;
  CHECK(zero.evaluate(p).is_zero());

  JointPoint wrong{{1, 2, 3}};
  CHECK_THROWS_AS(evaluate_payoff(inst, 0, wrong), Error);
}

TEST_CASE("player feasibility") {
  IPGInstance inst = demo_instance();
  CHECK(is_player_feasible(inst, 0, JointPoint{{1, 0}}));
  CHECK_FALSE(is_player_feasible(inst, 1, JointPoint{{1, 6}}));
  JointPoint p{{1, -1}};
  CHECK(is_player_feasible(inst, 0, p));
  CHECK(is_player_feasible(inst, 1, p));
}

TEST_CASE("feasibility is monotone under constraint removal") {
  TestRng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    IPGInstance inst = random_instance(rng.next(), 2, 3);
    JointPoint p;
    for (int v = 0; v < inst.total_vars(); ++v) {
      p.values.push_back(rng.uniform(inst.lower_of(v), inst.upper_of(v)));
    }
    for (int i = 0; i < inst.player_count(); ++i) {
      if (!is_player_feasible(inst, i, p)) continue;
      IPGInstance relaxed = inst;
      auto& cs = relaxed.players[static_cast<std::size_t>(i)].constraints;
      if (!cs.empty()) cs.pop_back();
      CHECK(is_player_feasible(relaxed, i, p));
    }
  }
}

TEST_CASE("sparse evaluation equals naive dense recomputation") {
  TestRng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    IPGInstance inst = random_instance(rng.next(), 2, 3);
    JointPoint p;
    for (int v = 0; v < inst.total_vars(); ++v) {
      p.values.push_back(rng.uniform(inst.lower_of(v), inst.upper_of(v)));
    }
    for (int i = 0; i < inst.player_count(); ++i) {
      CHECK(evaluate_payoff(inst, i, p) == naive_payoff(inst.player(i).payoff, p));
    }
  }
}

TEST_CASE("order-1 size formulas") {
  // Two players, 10 binary variables and one constraint each.
  IPGInstance inst;
  for (int player = 0; player < 2; ++player) {
    VarBlock b;
    b.owner = player;
    b.first = player * 10;
    b.count = 10;
    b.lower.assign(10, 0);
    b.upper.assign(10, 1);
    PlayerProgram p;
    p.own_block = b;
    p.payoff.dim = 20;
    LinExpr g;
    for (int k = 0; k < 10; ++k) g.add_term(b.first + k, Rational(-1));
    g.add_constant(Rational(5));
    p.constraints.push_back(LinearConstraint{g, Rel::Ge});
    inst.blocks.push_back(b);
    inst.players.push_back(std::move(p));
  }
  SizeEstimate est = size_estimate(inst);
  CHECK(est.variables == 100);
  CHECK(est.constraints == 122);

  // Single player, one variable, one constraint.
  IPGInstance one;
  VarBlock b{0, 0, 1, {0}, {3}};
  PlayerProgram p;
  p.own_block = b;
  p.payoff.dim = 1;
  LinExpr g;
  g.add_term(0, Rational(1));
  p.constraints.push_back(LinearConstraint{g, Rel::Ge});
  one.blocks.push_back(b);
  one.players.push_back(p);
  SizeEstimate single = size_estimate(one);
  CHECK(single.variables == 5);
  CHECK(single.constraints == 7);

  // A 10-node critical node game has the same shape (n=10, m=1 per player).
  SizeEstimate cng = size_estimate(to_ipg(small_cng(3, 10)));
  CHECK(cng.variables == 100);
  CHECK(cng.constraints == 122);
}

TEST_CASE("validate flags structural problems") {
  CHECK(validate(demo_instance()).empty());

  // Constraint referencing a foreign block with coupled = false.
  IPGInstance bad = demo_instance();
  LinExpr g;
  g.add_term(1, Rational(1));
  bad.players[0].constraints.push_back(LinearConstraint{g, Rel::Ge});
  CHECK(validate(bad).size() == 1);
  bad.players[0].coupled = true;
  CHECK(validate(bad).empty());

  // Payoff dimension mismatch.
  IPGInstance wrong_q = demo_instance();
  wrong_q.players[1].payoff.dim = 3;
  CHECK(validate(wrong_q).size() == 1);

  // Blocks that do not partition the joint vector.
  IPGInstance gap = demo_instance();
  gap.blocks[1].first = 2;
  gap.players[1].own_block.first = 2;
  CHECK_FALSE(validate(gap).empty());
}

TEST_CASE("equality constraints split into two rows") {
  PlayerProgram p;
  LinExpr g;
  g.add_term(0, Rational(1));
  g.add_constant(Rational(-2));
  p.constraints.push_back(LinearConstraint{g, Rel::Eq});
  auto rows = ge_form_constraints(p);
  REQUIRE(rows.size() == 2);
  JointPoint at2{{2}};
  JointPoint at3{{3}};
  CHECK(rows[0].evaluate(at2).is_zero());
  CHECK(rows[1].evaluate(at2).is_zero());
  CHECK((rows[0].evaluate(at3).sign() < 0 || rows[1].evaluate(at3).sign() < 0));
}
