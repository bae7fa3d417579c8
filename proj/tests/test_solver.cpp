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
#include "lois/solver.hpp"
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

void add_row(EncodedSystem& sys,
             std::initializer_list<std::pair<int, long long>> terms,
             long long constant) {
  ScaledLinExpr e;
  for (const auto& [v, c] : terms) e.add_term(v, Int(std::to_string(c)));
  e.constant = Int(std::to_string(constant));
  sys.constraints.push_back(EncodedRow{std::move(e), RowOrigin::Feasibility});
}

ScaledLinExpr objective(std::initializer_list<std::pair<int, long long>> terms,
                        long long constant = 0) {
  ScaledLinExpr e;
  for (const auto& [v, c] : terms) e.add_term(v, Int(std::to_string(c)));
  e.constant = Int(std::to_string(constant));
  return e;
}

/// Exhaustive reference: best objective value (minimize) and satisfiability.
struct Reference {
  bool feasible = false;
  std::optional<Int> best_min;
  std::optional<Int> best_max;
};

Reference exhaustive(const EncodedSystem& sys, const ScaledLinExpr* obj) {
  Reference ref;
  std::vector<long long> p(sys.variables.size());
  for (std::size_t v = 0; v < sys.variables.size(); ++v) p[v] = sys.variables[v].lower;
  while (true) {
    if (sys.assignment_feasible(p)) {
      ref.feasible = true;
      if (obj != nullptr) {
        Int value = obj->evaluate(p);
        if (!ref.best_min.has_value() || value < *ref.best_min) ref.best_min = value;
        if (!ref.best_max.has_value() || value > *ref.best_max) ref.best_max = value;
      }
    }
    std::size_t v = 0;
    for (; v < sys.variables.size(); ++v) {
      if (p[v] < sys.variables[v].upper) {
        ++p[v];
        break;
      }
      p[v] = sys.variables[v].lower;
    }
    if (v == sys.variables.size()) break;
  }
  return ref;
}

}  // namespace

TEST_CASE("feasibility basics") {
  SolverConfig config;

  EncodedSystem conflicting = box_system({{-10, 10}});
  add_row(conflicting, {{0, 1}}, -1);  // x >= 1
  add_row(conflicting, {{0, -1}}, 0);  // x <= 0
  CHECK(find_feasible(conflicting, config).status == SolveStatus::Infeasible);

  EncodedSystem empty = box_system({{0, 1}});
  SolveResult r = find_feasible(empty, config);
  CHECK(r.status == SolveStatus::Feasible);
  CHECK(r.assignment.has_value());
}

TEST_CASE("optimization basics") {
  SolverConfig config;
  EncodedSystem sys = box_system({{0, 7}});
  SolveResult r = optimize(sys, objective({{0, 1}}), Sense::Maximize, config);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(*r.objective_value == Rational(7));
  CHECK((*r.assignment)[0] == 7);

  SolveResult rmin = optimize(sys, objective({{0, 1}}, 3), Sense::Minimize, config);
  CHECK(*rmin.objective_value == Rational(3));

  EncodedSystem infeasible = box_system({{0, 1}});
  add_row(infeasible, {{0, 1}}, -2);
  CHECK(optimize(infeasible, objective({{0, 1}}), Sense::Minimize, config).status ==
        SolveStatus::Infeasible);
}

TEST_CASE("demo system solves into its two-point solution set") {
  IPGInstance inst = demo_instance();
  EncodedSystem sys = assemble(inst, 1, std::nullopt);
  SolverConfig config;
  SolveResult r = find_feasible(sys, config);
  REQUIRE(r.status == SolveStatus::Feasible);
  CHECK((*r.assignment)[0] == 1);
  CHECK((*r.assignment)[1] == -1);

  // Maximize x + y: both solution points (1,-1) and (5,-5) score 0.
  SolveResult opt = optimize(sys, objective({{0, 1}, {1, 1}}), Sense::Maximize, config);
  REQUIRE(opt.status == SolveStatus::Optimal);
  CHECK(*opt.objective_value == Rational(0));
}

TEST_CASE("indicator sum is at least one on an encoded fragment") {
  EncodedSystem sys = box_system({{-10, 10}, {-10, 10}});
  ImplicationConstraint ic;
  LinExpr ante;
  ante.add_term(0, Rational(2));
  ante.add_term(1, Rational(2));
  ante.add_constant(Rational(1));
  ic.antecedent = Inequality{-ante, Strictness::Strict};
  Consequent c;
  LinExpr cons;
  cons.add_term(0, Rational(-1));
  c.ineq = Inequality{cons, Strictness::Strict};
  ic.consequents.push_back(c);
  LicFragment frag = encode_lic(ic, sys);

  ScaledLinExpr sum;
  for (int k = 0; k < frag.var_count; ++k) sum.add_term(frag.first_var + k, Int(1));
  SolverConfig config;
  SolveResult r = optimize(sys, sum, Sense::Minimize, config);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.objective_value >= Rational(1));
}

TEST_CASE("solution streaming") {
  SolverConfig config;

  SUBCASE("three-point system is exhausted in three steps") {
    EncodedSystem sys = box_system({{0, 1}, {0, 1}});
    add_row(sys, {{0, 1}, {1, 1}}, -1);  // x0 + x1 >= 1
    SolutionStream stream(sys, config);
    std::set<std::vector<long long>> seen;
    for (int i = 0; i < 10; ++i) {
      auto p = stream.next();
      if (!p.has_value()) break;
      CHECK(seen.insert(*p).second);  // all distinct
    }
    CHECK(seen.size() == 3);
    CHECK(stream.exhausted());
  }

  SUBCASE("demo system yields its two points then exhausts") {
    EncodedSystem sys = assemble(demo_instance(), 1, std::nullopt);
    SolutionStream stream(sys, config);
    auto first = stream.next();
    REQUIRE(first.has_value());
    CHECK(*first == std::vector<long long>{1, -1});
    auto second = stream.next();
    REQUIRE(second.has_value());
    CHECK(*second == std::vector<long long>{5, -5});
    CHECK_FALSE(stream.next().has_value());
    CHECK(stream.exhausted());
  }
}

TEST_CASE("limits surface as limit-reached, never as a wrong verdict") {
  EncodedSystem sys = assemble(demo_instance(), 1, std::nullopt);
  SolverConfig config;
  config.node_limit = 1;
  SolveResult r = find_feasible(sys, config);
  CHECK((r.status == SolveStatus::Feasible || r.status == SolveStatus::LimitReached));
}

TEST_CASE("solver agrees with exhaustive enumeration on random systems") {
  TestRng rng(301);
  SolverConfig config;
  for (int trial = 0; trial < 60; ++trial) {
    int n = static_cast<int>(rng.uniform(2, 3));
    std::vector<std::pair<long long, long long>> bounds;
    for (int v = 0; v < n; ++v) {
      long long lo = rng.uniform(-3, 1);
      bounds.emplace_back(lo, lo + rng.uniform(1, 4));
    }
    EncodedSystem sys = box_system(bounds);
    int rows = static_cast<int>(rng.uniform(1, 4));
    for (int r = 0; r < rows; ++r) {
      ScaledLinExpr e;
      for (int v = 0; v < n; ++v) {
        e.add_term(v, Int(std::to_string(rng.uniform(-3, 3))));
      }
      e.constant = Int(std::to_string(rng.uniform(-2, 6)));
      sys.constraints.push_back(EncodedRow{std::move(e), RowOrigin::Feasibility});
    }
    ScaledLinExpr obj;
    for (int v = 0; v < n; ++v) obj.add_term(v, Int(std::to_string(rng.uniform(-4, 4))));
    Reference ref = exhaustive(sys, &obj);

    SolveResult feas = find_feasible(sys, config);
    CHECK((feas.status == SolveStatus::Feasible) == ref.feasible);

    SolveResult mn = optimize(sys, obj, Sense::Minimize, config);
    SolveResult mx = optimize(sys, obj, Sense::Maximize, config);
    if (ref.feasible) {
      CHECK(*mn.objective_value == Rational(*ref.best_min));
      CHECK(*mx.objective_value == Rational(*ref.best_max));
    } else {
      CHECK(mn.status == SolveStatus::Infeasible);
      CHECK(mx.status == SolveStatus::Infeasible);
    }
  }
}

TEST_CASE("identical configuration gives identical results") {
  EncodedSystem sys = assemble(demo_instance(), 1, std::nullopt);
  for (unsigned long long seed : {0ULL, 42ULL}) {
    SolverConfig config;
    config.seed = seed;
    SolveResult a = find_feasible(sys, config);
    SolveResult b = find_feasible(sys, config);
    CHECK(a.status == b.status);
    CHECK(*a.assignment == *b.assignment);
    CHECK(a.stats.nodes == b.stats.nodes);
  }
}

TEST_CASE("oversized coefficients fall back to the bignum engine") {
  EncodedSystem sys = box_system({{0, 3}});
  ScaledLinExpr row;
  row.add_term(0, Int("1000000000000000000000000000000"));  // 10^30
  row.constant = Int("-2000000000000000000000000000000");
  sys.constraints.push_back(EncodedRow{row, RowOrigin::Feasibility});
  SolverConfig config;
  SolveResult r = find_feasible(sys, config);
  REQUIRE(r.status == SolveStatus::Feasible);
  CHECK(r.stats.used_bignum);
  CHECK((*r.assignment)[0] >= 2);

  SolveResult opt = optimize(sys, objective({{0, 1}}), Sense::Minimize, config);
  CHECK((*opt.assignment)[0] == 2);
}
