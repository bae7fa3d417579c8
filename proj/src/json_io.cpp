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

#include "lois/json_io.hpp"

#include <fstream>

namespace lois {

namespace {

[[noreturn]] void bad_input(const std::string& what) {
  throw Error(Error::Kind::kIo, what);
}

long long int64_from_json(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_unsigned()) {
    unsigned long long v = j.get<unsigned long long>();
    if (v > static_cast<unsigned long long>(INT64_MAX)) bad_input("integer too large");
    return static_cast<long long>(v);
  }
  bad_input(std::string(what) + " must be an integer");
}

}  // namespace

Json rational_to_json(const Rational& r) {
  if (r.is_integer()) {
    Int num = r.numerator();
    if (num.fits_slong_p()) return Json(num.get_si());
  }
  return Json(r.to_string());
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational::from_int64(j.get<long long>());
  if (j.is_number_unsigned()) {
    unsigned long long v = j.get<unsigned long long>();
    if (v > static_cast<unsigned long long>(INT64_MAX)) bad_input("integer too large");
    return Rational::from_int64(static_cast<long long>(v));
  }
  if (j.is_string()) {
    auto r = Rational::parse(j.get<std::string>());
    if (!r.has_value()) bad_input("malformed rational \"" + j.get<std::string>() + "\"");
    return *r;
  }
  bad_input("rationals must be integers or \"p/q\" strings (floats rejected)");
}

Json cng_to_json(const CngInstance& inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["V"] = inst.node_count;
  j["p_d"] = inst.p_d;
  j["p_a"] = inst.p_a;
  Json d = Json::array(), a = Json::array();
  for (const auto& v : inst.d) d.push_back(rational_to_json(v));
  for (const auto& v : inst.a) a.push_back(rational_to_json(v));
  j["d"] = std::move(d);
  j["a"] = std::move(a);
  j["D"] = rational_to_json(inst.defense_budget);
  j["A"] = rational_to_json(inst.attack_budget);
  Json params;
  params["delta"] = rational_to_json(inst.params.delta);
  params["eta"] = rational_to_json(inst.params.eta);
  params["epsilon"] = rational_to_json(inst.params.epsilon);
  params["gamma"] = rational_to_json(inst.params.gamma);
  j["params"] = std::move(params);
  if (!inst.gen.empty()) j["gen"] = inst.gen;
  return j;
}

CngInstance cng_from_json(const Json& j) {
  CngInstance inst;
  if (!j.contains("V")) bad_input("missing \"V\"");
  inst.node_count = static_cast<int>(int64_from_json(j.at("V"), "V"));
  for (const char* key : {"p_d", "p_a", "d", "a", "D", "A", "params"}) {
    if (!j.contains(key)) bad_input(std::string("missing \"") + key + "\"");
  }
  for (const auto& v : j.at("p_d")) inst.p_d.push_back(int64_from_json(v, "p_d"));
  for (const auto& v : j.at("p_a")) inst.p_a.push_back(int64_from_json(v, "p_a"));
  for (const auto& v : j.at("d")) inst.d.push_back(rational_from_json(v));
  for (const auto& v : j.at("a")) inst.a.push_back(rational_from_json(v));
  inst.defense_budget = rational_from_json(j.at("D"));
  inst.attack_budget = rational_from_json(j.at("A"));
  const Json& p = j.at("params");
  for (const char* key : {"delta", "eta", "epsilon", "gamma"}) {
    if (!p.contains(key)) bad_input(std::string("params missing \"") + key + "\"");
  }
  inst.params.delta = rational_from_json(p.at("delta"));
  inst.params.eta = rational_from_json(p.at("eta"));
  inst.params.epsilon = rational_from_json(p.at("epsilon"));
  inst.params.gamma = rational_from_json(p.at("gamma"));
  if (j.contains("gen")) {
    for (const auto& [k, v] : j.at("gen").items()) {
      inst.gen[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  auto diags = inst.validate();
  if (!diags.empty()) bad_input("invalid instance: " + diags.front());
  return inst;
}

Json ipg_to_json(const IPGInstance& inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  int n = inst.total_vars();
  Json players = Json::array();
  for (const auto& p : inst.players) {
    Json pj;
    pj["sense"] = p.payoff.sense == Sense::Maximize ? "max" : "min";
    Json q_matrix = Json::array();
    for (int i = 0; i < n; ++i) {
      Json row = Json::array();
      for (int k = 0; k < n; ++k) {
        auto it = p.payoff.quad.find({i, k});
        row.push_back(it == p.payoff.quad.end() ? Json(0)
                                                : rational_to_json(it->second));
      }
      q_matrix.push_back(std::move(row));
    }
    pj["Q"] = std::move(q_matrix);
    Json q_vec = Json::array();
    for (int i = 0; i < n; ++i) {
      auto it = p.payoff.lin.find(i);
      q_vec.push_back(it == p.payoff.lin.end() ? Json(0)
                                               : rational_to_json(it->second));
    }
    pj["q"] = std::move(q_vec);
    pj["r"] = rational_to_json(p.payoff.offset);
    Json constraints = Json::array();
    for (const auto& c : p.constraints) {
      Json cj;
      Json coeffs;
      for (const auto& [v, coef] : c.expr.coeffs()) {
        coeffs[std::to_string(v)] = rational_to_json(coef);
      }
      cj["coeffs"] = std::move(coeffs);
      cj["const"] = rational_to_json(c.expr.constant());
      cj["rel"] = c.rel == Rel::Ge ? ">=" : (c.rel == Rel::Le ? "<=" : "=");
      constraints.push_back(std::move(cj));
    }
    pj["constraints"] = std::move(constraints);
    pj["coupled"] = p.coupled;
    players.push_back(std::move(pj));
  }
  j["players"] = std::move(players);
  Json blocks = Json::array();
  for (const auto& b : inst.blocks) {
    Json bj;
    bj["owner"] = b.owner;
    bj["lo"] = b.lower;
    bj["hi"] = b.upper;
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

IPGInstance ipg_from_json(const Json& j) {
  IPGInstance inst;
  if (!j.contains("players") || !j.contains("blocks")) {
    bad_input("instance must have \"players\" and \"blocks\"");
  }
  int next = 0;
  for (const auto& bj : j.at("blocks")) {
    VarBlock b;
    b.owner = static_cast<int>(int64_from_json(bj.at("owner"), "owner"));
    for (const auto& v : bj.at("lo")) b.lower.push_back(int64_from_json(v, "lo"));
    for (const auto& v : bj.at("hi")) b.upper.push_back(int64_from_json(v, "hi"));
    if (b.lower.size() != b.upper.size() || b.lower.empty()) {
      bad_input("block bound vectors must be nonempty and equal-length");
    }
    b.first = next;
    b.count = static_cast<int>(b.lower.size());
    next += b.count;
    inst.blocks.push_back(std::move(b));
  }
  int n = next;

  int player_index = 0;
  for (const auto& pj : j.at("players")) {
    PlayerProgram p;
    std::string sense = pj.value("sense", "min");
    if (sense != "min" && sense != "max") bad_input("sense must be min or max");
    p.payoff.sense = sense == "max" ? Sense::Maximize : Sense::Minimize;
    p.payoff.dim = n;
    if (pj.contains("Q")) {
      int i = 0;
      for (const auto& row : pj.at("Q")) {
        if (static_cast<int>(row.size()) != n || i >= n) {
          bad_input("Q must be an NxN matrix");
        }
        for (int k = 0; k < n; ++k) {
          Rational c = rational_from_json(row[static_cast<std::size_t>(k)]);
          p.payoff.add_quad(i, k, c);
        }
        ++i;
      }
      if (i != n) bad_input("Q must be an NxN matrix");
    }
    if (pj.contains("q")) {
      int i = 0;
      for (const auto& v : pj.at("q")) {
        if (i >= n) bad_input("q longer than N");
        p.payoff.add_lin(i, rational_from_json(v));
        ++i;
      }
    }
    if (pj.contains("r")) p.payoff.offset = rational_from_json(pj.at("r"));
    if (pj.contains("constraints")) {
      for (const auto& cj : pj.at("constraints")) {
        LinearConstraint c;
        if (cj.contains("coeffs")) {
          for (const auto& [key, v] : cj.at("coeffs").items()) {
            int var = -1;
            try {
              var = std::stoi(key);
            } catch (const std::exception&) {
              bad_input("constraint coefficient key \"" + key +
                        "\" is not a variable index");
            }
            if (var < 0 || var >= n) bad_input("constraint variable out of range");
            c.expr.add_term(var, rational_from_json(v));
          }
        }
        if (cj.contains("const")) c.expr.add_constant(rational_from_json(cj.at("const")));
        std::string rel = cj.value("rel", ">=");
        if (rel == ">=")
          c.rel = Rel::Ge;
        else if (rel == "<=")
          c.rel = Rel::Le;
        else if (rel == "=")
          c.rel = Rel::Eq;
        else
          bad_input("rel must be one of >=, <=, =");
        p.constraints.push_back(std::move(c));
      }
    }
    // Own block: the unique block owned by this player.
    bool found = false;
    for (const auto& b : inst.blocks) {
      if (b.owner == player_index) {
        if (found) bad_input("player owns more than one block");
        p.own_block = b;
        found = true;
      }
    }
    if (!found) bad_input("player " + std::to_string(player_index) + " owns no block");
    if (pj.contains("coupled")) {
      p.coupled = pj.at("coupled").get<bool>();
    } else {
      // Infer: any constraint touching a foreign variable makes it coupled.
      p.coupled = false;
      for (const auto& c : p.constraints) {
        for (const auto& [v, coef] : c.expr.coeffs()) {
          (void)coef;
          if (!p.own_block.contains(v)) p.coupled = true;
        }
      }
    }
    inst.players.push_back(std::move(p));
    ++player_index;
  }
  auto diags = validate(inst);
  if (!diags.empty()) bad_input("invalid instance: " + diags.front());
  return inst;
}

Json equilibrium_report_to_json(const EquilibriumReport& report) {
  Json j;
  j["kind"] = report.kind;
  j["point"] = report.point.values;
  Json payoffs = Json::array();
  for (const auto& p : report.per_player_payoffs) payoffs.push_back(rational_to_json(p));
  j["payoffs"] = std::move(payoffs);
  j["welfare"] = report.welfare.has_value() ? rational_to_json(*report.welfare)
                                            : Json(nullptr);
  return j;
}

bool looks_like_cng(const Json& j) { return j.contains("V"); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    bad_input("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) bad_input("cannot write " + path);
  out << content;
  if (!out) bad_input("write failed for " + path);
}

std::string dump_artifact(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lois
