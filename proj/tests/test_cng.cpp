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
#include "lois/json_io.hpp"
#include "test_util.hpp"

using namespace lois;
using namespace lois::testutil;

namespace {

const SolverConfig kConfig{};

CngInstance one_node(long long pd, long long pa, CngParams params) {
  CngInstance inst;
  inst.node_count = 1;
  inst.p_d = {pd};
  inst.p_a = {pa};
  inst.d = {Rational(1)};
  inst.a = {Rational(1)};
  inst.defense_budget = Rational(10);
  inst.attack_budget = Rational(10);
  inst.params = params;
  return inst;
}

CngParams default_params() {
  return CngParams{Rational(1, 10), Rational(1, 2), Rational(4, 5),
                   Rational(1, 20)};
}

}  // namespace

TEST_CASE("per-node payoff cells") {
  CngParams p = default_params();
  p.gamma = Rational(1, 10);
  CngInstance inst = one_node(100, 10, p);

  // Attacker: untouched node costs the opportunity rate; a breach pays in
  // full; a contested node pays the (1 - eta) share.
  CHECK(attacker_payoff(inst, {0}, {0}) == Rational(-1));
  CHECK(attacker_payoff(inst, {0}, {1}) == Rational(10));
  p.eta = Rational(1, 2);
  inst.params = p;
  CHECK(attacker_payoff(inst, {1}, {1}) == Rational(5));
  CHECK(attacker_payoff(inst, {1}, {0}) == Rational(0));

  // Defender: full on normal operation, delta share when breached, epsilon
  // share for an uncontested defense, eta share when contested.
  CHECK(defender_payoff(inst, {0}, {0}) == Rational(100));
  p.delta = Rational(1, 5);
  inst.params = p;
  CHECK(defender_payoff(inst, {0}, {1}) == Rational(20));
  p.epsilon = Rational(4, 5);
  inst.params = p;
  CHECK(defender_payoff(inst, {1}, {0}) == Rational(80));
  CHECK(defender_payoff(inst, {1}, {1}) == Rational(50));
}

TEST_CASE("payoff cells match for random parameter draws") {
  TestRng rng(601);
  for (int trial = 0; trial < 50; ++trial) {
    CngParams p;
    // delta < eta < epsilon inside [0,1], gamma free in [0,1].
    long long a = rng.uniform(0, 97);
    long long b = a + rng.uniform(1, 2);
    long long c = b + rng.uniform(1, 100 - b);
    p.delta = Rational(a, 100);
    p.eta = Rational(b, 100);
    p.epsilon = Rational(c, 100);
    p.gamma = Rational(rng.uniform(0, 100), 100);
    long long pd = rng.uniform(1, 100), pa = rng.uniform(1, 100);
    CngInstance inst = one_node(pd, pa, p);

    CHECK(attacker_payoff(inst, {0}, {0}) == -p.gamma * Rational::from_int64(pa));
    CHECK(attacker_payoff(inst, {0}, {1}) == Rational::from_int64(pa));
    CHECK(attacker_payoff(inst, {1}, {0}) == Rational(0));
    CHECK(attacker_payoff(inst, {1}, {1}) ==
          (Rational(1) - p.eta) * Rational::from_int64(pa));
    CHECK(defender_payoff(inst, {0}, {0}) == Rational::from_int64(pd));
    CHECK(defender_payoff(inst, {0}, {1}) == p.delta * Rational::from_int64(pd));
    CHECK(defender_payoff(inst, {1}, {0}) == p.epsilon * Rational::from_int64(pd));
    CHECK(defender_payoff(inst, {1}, {1}) == p.eta * Rational::from_int64(pd));
  }
}

TEST_CASE("quadratic-form conversion agrees with the direct formulas") {
  CngInstance inst = small_cng(71, 2);
  IPGInstance ipg = to_ipg(inst);
  CHECK(validate(ipg).empty());

  // Exactly one cross term per node in the attacker form.
  CHECK(ipg.player(0).payoff.quad.size() == 2);

  int checked = 0;
  for_each_box_point(ipg, [&](const JointPoint& p) {
    std::vector<long long> alpha(p.values.begin(), p.values.begin() + 2);
    std::vector<long long> x(p.values.begin() + 2, p.values.end());
    CHECK(evaluate_payoff(ipg, 0, p) == attacker_payoff(inst, x, alpha));
    CHECK(evaluate_payoff(ipg, 1, p) == defender_payoff(inst, x, alpha));
    ++checked;
  });
  CHECK(checked == 16);

  // Exhaustive agreement for a larger instance as well.
  CngInstance inst4 = small_cng(72, 4);
  IPGInstance ipg4 = to_ipg(inst4);
  for_each_box_point(ipg4, [&](const JointPoint& p) {
    std::vector<long long> alpha(p.values.begin(), p.values.begin() + 4);
    std::vector<long long> x(p.values.begin() + 4, p.values.end());
    CHECK(evaluate_payoff(ipg4, 0, p) == attacker_payoff(inst4, x, alpha));
    CHECK(evaluate_payoff(ipg4, 1, p) == defender_payoff(inst4, x, alpha));
  });
}

TEST_CASE("zero budgets leave only the all-zeros strategy") {
  CngInstance inst = small_cng(73, 2);
  inst.attack_budget = Rational(0);
  inst.defense_budget = Rational(0);
  IPGInstance ipg = to_ipg(inst);
  for_each_box_point(ipg, [&](const JointPoint& p) {
    bool alpha_zero = p[0] == 0 && p[1] == 0;
    bool x_zero = p[2] == 0 && p[3] == 0;
    CHECK(is_player_feasible(ipg, 0, p) == alpha_zero);
    CHECK(is_player_feasible(ipg, 1, p) == x_zero);
  });
}

TEST_CASE("sequential forms") {
  CngInstance inst = small_cng(74, 3);
  StackelbergForm def = to_stackelberg(inst, CngRole::Defender);
  CHECK(def.leader.own_block.first == 3);  // defender owns the x block
  CHECK(def.followers.size() == 1);
  CHECK(def.followers[0].own_block.first == 0);
  CHECK(def.leader.payoff.sense == Sense::Maximize);

  StackelbergForm att = to_stackelberg(inst, CngRole::Attacker);
  CHECK(att.leader.own_block.first == 0);
  CHECK(att.followers[0].own_block.first == 3);
}

TEST_CASE("generator determinism and configuration") {
  CngGenConfig cfg;
  CngInstance a = generate_instance(99, 10, cfg);
  CngInstance b = generate_instance(99, 10, cfg);
  CHECK(dump_artifact(cng_to_json(a)) == dump_artifact(cng_to_json(b)));
  CHECK(a.node_count == 10);
  CHECK(a.p_d.size() == 10);
  CHECK(a.params.validate().empty());
  CHECK(generate_instance(100, 10, cfg).p_d != a.p_d);

  // Full defense-budget ratio covers the total cost.
  cfg.budget_ratio_d = Rational(1);
  CngInstance full = generate_instance(99, 6, cfg);
  Rational total;
  for (const auto& c : full.d) total += c;
  CHECK(full.defense_budget == total);

  CHECK_THROWS_AS(generate_instance(1, 0, cfg), Error);
  CngGenConfig bad;
  bad.cost_lo = 5;
  bad.cost_hi = 2;
  CHECK_THROWS_AS(generate_instance(1, 3, bad), Error);
}

TEST_CASE("price metrics") {
  SUBCASE("the defender optimum itself has price one") {
    CngInstance inst = small_cng(81, 3);
    IPGInstance ipg = to_ipg(inst);
    // Find the defender-best point of the joint budget space by scan.
    std::optional<Rational> best;
    JointPoint best_point;
    for_each_box_point(ipg, [&](const JointPoint& p) {
      if (!is_player_feasible(ipg, 0, p) || !is_player_feasible(ipg, 1, p)) return;
      Rational v = evaluate_payoff(ipg, 1, p);
      if (!best.has_value() || v > *best) {
        best = v;
        best_point = p;
      }
    });
    PriceMetrics m = price_metrics(inst, best_point, kConfig);
    REQUIRE(m.pos.has_value());
    CHECK(*m.pos == Rational(1));
  }

  SUBCASE("metrics match the exhaustive scan") {
    for (unsigned long long seed : {82ULL, 83ULL}) {
      CngInstance inst = small_cng(seed, 3);
      IPGInstance ipg = to_ipg(inst);
      Rational best_d, best_a;
      bool first = true;
      for_each_box_point(ipg, [&](const JointPoint& p) {
        if (!is_player_feasible(ipg, 0, p) || !is_player_feasible(ipg, 1, p)) return;
        Rational vd = evaluate_payoff(ipg, 1, p);
        Rational va = evaluate_payoff(ipg, 0, p);
        if (first || vd > best_d) best_d = vd;
        if (first || va > best_a) best_a = va;
        first = false;
      });
      GameResult r = solve_lois(ipg, 1, kConfig);
      REQUIRE(r.status == GameStatus::Found);
      PriceMetrics m = price_metrics(inst, r.report->point, kConfig);
      CHECK(m.best_defender_value == best_d);
      CHECK(m.best_attacker_value == best_a);
      if (m.pos.has_value()) {
        CHECK(*m.pos == best_d / evaluate_payoff(ipg, 1, r.report->point));
        if (evaluate_payoff(ipg, 1, r.report->point).sign() > 0) {
          CHECK(*m.pos >= Rational(1));
        }
      }
      if (m.poa.has_value() &&
          evaluate_payoff(ipg, 0, r.report->point).sign() > 0) {
        CHECK(*m.poa >= Rational(1));
      }
    }
  }

  SUBCASE("zero attacker payoff leaves the ratio undefined") {
    CngGenConfig cfg;
    cfg.budget_ratio_d = Rational(1);
    CngInstance inst = generate_instance(84, 3, cfg);
    // Defend everything, attack nothing: the attacker payoff is exactly 0.
    JointPoint p{{0, 0, 0, 1, 1, 1}};
    CHECK(attacker_payoff(inst, {1, 1, 1}, {0, 0, 0}).is_zero());
    PriceMetrics m = price_metrics(inst, p, kConfig);
    CHECK_FALSE(m.poa.has_value());
    CHECK(m.pos.has_value());
  }

  SUBCASE("points outside the joint space are rejected") {
    CngInstance inst = small_cng(85, 2);
    inst.attack_budget = Rational(0);
    CHECK_THROWS_AS(price_metrics(inst, JointPoint{{1, 0, 0, 0}}, kConfig), Error);
  }
}

TEST_CASE("solver points respect the budgets exactly") {
  for (unsigned long long seed : {91ULL, 92ULL, 93ULL}) {
    CngInstance inst = small_cng(seed, 4);
    IPGInstance ipg = to_ipg(inst);
    GameResult r = solve_lois(ipg, 1, kConfig);
    REQUIRE(r.status == GameStatus::Found);
    Rational attack_spend, defense_spend;
    for (int i = 0; i < inst.node_count; ++i) {
      attack_spend +=
          inst.a[static_cast<std::size_t>(i)] *
          Rational::from_int64(r.report->point[cng_alpha_index(i)]);
      defense_spend +=
          inst.d[static_cast<std::size_t>(i)] *
          Rational::from_int64(r.report->point[cng_x_index(inst, i)]);
    }
    CHECK(attack_spend <= inst.attack_budget);
    CHECK(defense_spend <= inst.defense_budget);
  }
}

TEST_CASE("instance validation") {
  CngInstance inst = small_cng(95, 2);
  CHECK(inst.validate().empty());
  CngInstance bad = inst;
  bad.params.eta = Rational(0);  // violates delta < eta
  CHECK_FALSE(bad.validate().empty());
  CngInstance negative = inst;
  negative.p_a[0] = 0;
  CHECK_FALSE(negative.validate().empty());
}
