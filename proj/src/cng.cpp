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

#include "lois/cng.hpp"

namespace lois {

std::vector<std::string> CngParams::validate() const {
  std::vector<std::string> diags;
  auto in_unit = [](const Rational& r) {
    return r.sign() >= 0 && r <= Rational(1);
  };
  if (!in_unit(delta) || !in_unit(eta) || !in_unit(epsilon) || !in_unit(gamma)) {
    diags.push_back("parameters must lie in [0, 1]");
  }
  if (!(delta < eta && eta < epsilon)) {
    diags.push_back("parameters must satisfy delta < eta < epsilon");
  }
  return diags;
}

std::vector<std::string> CngInstance::validate() const {
  std::vector<std::string> diags = params.validate();
  auto check_len = [&](std::size_t len, const char* name) {
    if (len != static_cast<std::size_t>(node_count)) {
      diags.push_back(std::string(name) + " length does not match node count");
    }
  };
  if (node_count <= 0) diags.push_back("node count must be positive");
  check_len(p_d.size(), "p_d");
  check_len(p_a.size(), "p_a");
  check_len(d.size(), "d");
  check_len(a.size(), "a");
  for (long long v : p_d) {
    if (v <= 0) diags.push_back("p_d entries must be positive");
  }
  for (long long v : p_a) {
    if (v <= 0) diags.push_back("p_a entries must be positive");
  }
  for (const auto& v : d) {
    if (v.sign() <= 0) diags.push_back("defense costs must be positive");
  }
  for (const auto& v : a) {
    if (v.sign() <= 0) diags.push_back("attack costs must be positive");
  }
  if (defense_budget.sign() < 0 || attack_budget.sign() < 0) {
    diags.push_back("budgets must be nonnegative");
  }
  return diags;
}

namespace {

void require_cng(const CngInstance& inst) {
  auto diags = inst.validate();
  if (!diags.empty()) {
    throw Error(Error::Kind::kInvalidArgument, "invalid instance: " + diags.front());
  }
}

void require_vectors(const CngInstance& inst, const std::vector<long long>& x,
                     const std::vector<long long>& alpha) {
  if (static_cast<int>(x.size()) != inst.node_count ||
      static_cast<int>(alpha.size()) != inst.node_count) {
    throw Error(Error::Kind::kDimensionMismatch,
                "choice vectors must have one entry per node");
  }
}

}  // namespace

Rational attacker_payoff(const CngInstance& inst,
                         const std::vector<long long>& x,
                         const std::vector<long long>& alpha) {
  require_vectors(inst, x, alpha);
  Rational total;
  for (int i = 0; i < inst.node_count; ++i) {
    Rational xi = Rational::from_int64(x[static_cast<std::size_t>(i)]);
    Rational ai = Rational::from_int64(alpha[static_cast<std::size_t>(i)]);
    Rational p = Rational::from_int64(inst.p_a[static_cast<std::size_t>(i)]);
    Rational one(1);
    total += -inst.params.gamma * p * (one - xi) * (one - ai)  // untouched
             + p * (one - xi) * ai                             // breached
             + (one - inst.params.eta) * p * xi * ai;          // contested
  }
  return total;
}

Rational defender_payoff(const CngInstance& inst,
                         const std::vector<long long>& x,
                         const std::vector<long long>& alpha) {
  require_vectors(inst, x, alpha);
  Rational total;
  for (int i = 0; i < inst.node_count; ++i) {
    Rational xi = Rational::from_int64(x[static_cast<std::size_t>(i)]);
    Rational ai = Rational::from_int64(alpha[static_cast<std::size_t>(i)]);
    Rational p = Rational::from_int64(inst.p_d[static_cast<std::size_t>(i)]);
    Rational one(1);
    total += p * (one - xi) * (one - ai)                       // normal
             + inst.params.delta * p * (one - xi) * ai         // breached
             + inst.params.epsilon * p * xi * (one - ai)       // defended
             + inst.params.eta * p * xi * ai;                  // contested
  }
  return total;
}

IPGInstance to_ipg(const CngInstance& inst) {
  require_cng(inst);
  int v = inst.node_count;
  IPGInstance out;

  VarBlock attacker_block;
  attacker_block.owner = 0;
  attacker_block.first = 0;
  attacker_block.count = v;
  attacker_block.lower.assign(static_cast<std::size_t>(v), 0);
  attacker_block.upper.assign(static_cast<std::size_t>(v), 1);
  VarBlock defender_block = attacker_block;
  defender_block.owner = 1;
  defender_block.first = v;

  const Rational one(1);

  // Attacker: per node, -gamma p (1-x)(1-alpha) + p (1-x) alpha
  // + (1-eta) p x alpha. Expanded over (alpha_i, x_i):
  //   constant -gamma p, x: gamma p, alpha: (1+gamma) p,
  //   alpha*x: -(gamma+eta) p.
  PlayerProgram attacker;
  attacker.payoff.dim = 2 * v;
  attacker.payoff.sense = Sense::Maximize;
  LinExpr attack_cost;
  for (int i = 0; i < v; ++i) {
    Rational p = Rational::from_int64(inst.p_a[static_cast<std::size_t>(i)]);
    int ai = cng_alpha_index(i);
    int xi = cng_x_index(inst, i);
    attacker.payoff.offset += -inst.params.gamma * p;
    attacker.payoff.add_lin(xi, inst.params.gamma * p);
    attacker.payoff.add_lin(ai, (one + inst.params.gamma) * p);
    attacker.payoff.add_quad(ai, xi, -(inst.params.gamma + inst.params.eta) * p);
    attack_cost.add_term(ai, inst.a[static_cast<std::size_t>(i)]);
  }
  attack_cost.add_constant(-inst.attack_budget);
  attacker.constraints.push_back(LinearConstraint{attack_cost, Rel::Le});
  attacker.own_block = attacker_block;

  // Defender: per node, p (1-x)(1-alpha) + delta p (1-x) alpha
  // + epsilon p x (1-alpha) + eta p x alpha. Expanded:
  //   constant p, x: (epsilon-1) p, alpha: (delta-1) p,
  //   alpha*x: (1 - delta - epsilon + eta) p.
  PlayerProgram defender;
  defender.payoff.dim = 2 * v;
  defender.payoff.sense = Sense::Maximize;
  LinExpr defense_cost;
  for (int i = 0; i < v; ++i) {
    Rational p = Rational::from_int64(inst.p_d[static_cast<std::size_t>(i)]);
    int ai = cng_alpha_index(i);
    int xi = cng_x_index(inst, i);
    defender.payoff.offset += p;
    defender.payoff.add_lin(xi, (inst.params.epsilon - one) * p);
    defender.payoff.add_lin(ai, (inst.params.delta - one) * p);
    defender.payoff.add_quad(
        ai, xi, (one - inst.params.delta - inst.params.epsilon + inst.params.eta) * p);
    defense_cost.add_term(xi, inst.d[static_cast<std::size_t>(i)]);
  }
  defense_cost.add_constant(-inst.defense_budget);
  defender.constraints.push_back(LinearConstraint{defense_cost, Rel::Le});
  defender.own_block = defender_block;

  out.players.push_back(std::move(attacker));
  out.players.push_back(std::move(defender));
  out.blocks.push_back(attacker_block);
  out.blocks.push_back(defender_block);
  return out;
}

StackelbergForm to_stackelberg(const CngInstance& inst, CngRole leader) {
  IPGInstance ipg = to_ipg(inst);
  StackelbergForm form;
  if (leader == CngRole::Defender) {
    form.leader = ipg.players[1];
    form.followers = {ipg.players[0]};
  } else {
    form.leader = ipg.players[0];
    form.followers = {ipg.players[1]};
  }
  return form;
}

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(unsigned long long seed) : state_(seed) {}

  unsigned long long next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    unsigned long long z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [lo, hi]; the modulo bias is far below anything
  /// observable at these range sizes and keeps the stream platform-stable.
  long long uniform(long long lo, long long hi) {
    unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
    return lo + static_cast<long long>(next() % span);
  }

 private:
  unsigned long long state_;
};

}  // namespace

CngInstance generate_instance(unsigned long long seed, int node_count,
                              const CngGenConfig& config) {
  if (node_count < 1) {
    throw Error(Error::Kind::kInvalidArgument, "node count must be >= 1");
  }
  if (config.criticality_lo < 1 || config.criticality_lo > config.criticality_hi ||
      config.cost_lo < 1 || config.cost_lo > config.cost_hi) {
    throw Error(Error::Kind::kInvalidArgument, "invalid generator ranges");
  }
  SplitMix64 rng(seed);
  CngInstance inst;
  inst.node_count = node_count;
  for (int i = 0; i < node_count; ++i) {
    inst.p_d.push_back(rng.uniform(config.criticality_lo, config.criticality_hi));
  }
  for (int i = 0; i < node_count; ++i) {
    inst.p_a.push_back(rng.uniform(config.criticality_lo, config.criticality_hi));
  }
  Rational d_total, a_total;
  for (int i = 0; i < node_count; ++i) {
    Rational c = Rational::from_int64(rng.uniform(config.cost_lo, config.cost_hi));
    inst.d.push_back(c);
    d_total += c;
  }
  for (int i = 0; i < node_count; ++i) {
    Rational c = Rational::from_int64(rng.uniform(config.cost_lo, config.cost_hi));
    inst.a.push_back(c);
    a_total += c;
  }
  inst.defense_budget = Rational((config.budget_ratio_d * d_total).round_half_up());
  inst.attack_budget = Rational((config.budget_ratio_a * a_total).round_half_up());
  inst.params = config.params;
  inst.gen["seed"] = std::to_string(seed);
  inst.gen["criticality_range"] = std::to_string(config.criticality_lo) + ".." +
                                  std::to_string(config.criticality_hi);
  inst.gen["cost_range"] =
      std::to_string(config.cost_lo) + ".." + std::to_string(config.cost_hi);
  inst.gen["budget_ratio_a"] = config.budget_ratio_a.to_string();
  inst.gen["budget_ratio_d"] = config.budget_ratio_d.to_string();
  inst.gen["draw_order"] = "p_d,p_a,d,a";
  require_cng(inst);
  return inst;
}

PriceMetrics price_metrics(const CngInstance& inst, const JointPoint& point,
                           const SolverConfig& config, MetricSide side) {
  require_cng(inst);
  IPGInstance ipg = to_ipg(inst);
  if (point.size() != ipg.total_vars() || !ipg.in_bounds(point)) {
    throw Error(Error::Kind::kInvalidArgument,
                "point is outside the joint binary space");
  }
  for (int i = 0; i < 2; ++i) {
    if (!is_player_feasible(ipg, i, point)) {
      throw Error(Error::Kind::kInvalidArgument,
                  "point violates a budget constraint");
    }
  }

  // Best payoffs over the joint budget space (no optimality conditions).
  std::vector<std::vector<LinExpr>> budgets;
  budgets.push_back(ge_form_constraints(ipg.players[0]));
  budgets.push_back(ge_form_constraints(ipg.players[1]));

  PriceMetrics metrics;
  metrics.attacker_value_at_point = evaluate_payoff(ipg, 0, point);
  metrics.defender_value_at_point = evaluate_payoff(ipg, 1, point);

  // On a timeout the incumbent stands in for the optimum, as in the usual
  // capped-solve protocol; the point itself is feasible, so its value is
  // always an admissible fallback.
  auto best_of = [&](const QuadraticPayoff& objective, const Rational& at_point) {
    EncodedSystem system =
        assemble_from_conditions(ipg.blocks, budgets, {}, objective);
    SolveResult r = optimize(system, config);
    if (r.status == SolveStatus::Optimal) return *r.objective_value;
    if (r.status == SolveStatus::LimitReached) {
      metrics.exact = false;
      if (r.objective_value.has_value() && *r.objective_value > at_point) {
        return *r.objective_value;
      }
      return at_point;
    }
    throw Error(Error::Kind::kInvalidArgument,
                "joint-space optimization reported an impossible status");
  };

  if (side != MetricSide::SecurityOnly) {
    metrics.best_attacker_value =
        best_of(ipg.players[0].payoff, metrics.attacker_value_at_point);
    if (!metrics.attacker_value_at_point.is_zero()) {
      metrics.poa = metrics.best_attacker_value / metrics.attacker_value_at_point;
    }
  }
  if (side != MetricSide::AggressionOnly) {
    metrics.best_defender_value =
        best_of(ipg.players[1].payoff, metrics.defender_value_at_point);
    if (!metrics.defender_value_at_point.is_zero()) {
      metrics.pos = metrics.best_defender_value / metrics.defender_value_at_point;
    }
  }
  return metrics;
}

}  // namespace lois
