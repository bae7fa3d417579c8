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
#include "lois/json_io.hpp"
#include "test_util.hpp"

using namespace lois;
using namespace lois::testutil;

TEST_CASE("rational json forms") {
  CHECK(rational_from_json(Json(7)) == Rational(7));
  CHECK(rational_from_json(Json("2/6")) == Rational(Int(1), Int(3)));
  CHECK(rational_from_json(Json("-5")) == Rational(-5));
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), Error);
  CHECK_THROWS_AS(rational_from_json(Json("a/b")), Error);
  CHECK(rational_to_json(Rational(3)) == Json(3));
  CHECK(rational_to_json(Rational(Int(1), Int(2))) == Json("1/2"));
}

TEST_CASE("node-game instances round-trip byte-identically") {
  CngInstance inst = small_cng(7, 4);
  Json j = cng_to_json(inst);
  CngInstance back = cng_from_json(j);
  CHECK(dump_artifact(cng_to_json(back)) == dump_artifact(j));
  CHECK(looks_like_cng(j));
}

TEST_CASE("general instances round-trip and preserve solutions") {
  IPGInstance inst = demo_instance();
  Json j = ipg_to_json(inst);
  CHECK_FALSE(looks_like_cng(j));
  IPGInstance back = ipg_from_json(j);
  CHECK(validate(back).empty());
  CHECK(back.total_vars() == 2);
  CHECK(back.player(0).payoff.quad == inst.player(0).payoff.quad);
  CHECK(back.player(1).constraints.size() == 2);
  GameResult r = solve_lois(back, 1, SolverConfig{});
  REQUIRE(r.status == GameStatus::Found);
  CHECK(r.report->point == JointPoint{{1, -1}});
}

TEST_CASE("coupled flag is inferred from constraint supports") {
  IPGInstance inst = demo_instance();
  LinExpr g;
  g.add_term(0, Rational(1));
  g.add_term(1, Rational(1));
  inst.players[0].constraints.push_back(LinearConstraint{g, Rel::Ge});
  inst.players[0].coupled = true;
  Json j = ipg_to_json(inst);
  j["players"][0].erase("coupled");
  IPGInstance back = ipg_from_json(j);
  CHECK(back.player(0).coupled);
}

TEST_CASE("malformed inputs raise structured errors") {
  CHECK_THROWS_AS(cng_from_json(Json::object()), Error);
  Json bad = cng_to_json(small_cng(1, 2));
  bad["params"]["eta"] = "0";  // violates delta < eta
  CHECK_THROWS_AS(cng_from_json(bad), Error);

  Json ipg = ipg_to_json(demo_instance());
  ipg["players"][0]["constraints"][0]["rel"] = "!=";
  CHECK_THROWS_AS(ipg_from_json(ipg), Error);

  CHECK_THROWS_AS(read_json_file("/nonexistent/path.json"), Error);
}

TEST_CASE("report serialization") {
  GameResult r = solve_lois(demo_instance(), 1, SolverConfig{});
  REQUIRE(r.status == GameStatus::Found);
  Json j = equilibrium_report_to_json(*r.report);
  CHECK(j.at("kind") == "lois-1");
  CHECK(j.at("point") == Json::array({1, -1}));
  CHECK(j.at("payoffs")[0] == Json(-1));
  CHECK(j.at("welfare").is_null());
}
