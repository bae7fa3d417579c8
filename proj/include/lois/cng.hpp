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

#ifndef LOIS_CNG_HPP
#define LOIS_CNG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lois/equilibrium.hpp"

namespace lois {

/// Scalar parameters of the critical node game. These are per-node payoff
/// multipliers (not to be confused with the neighborhood step type):
///   delta   - defender's retained share when a node is breached undefended
///   eta     - both sides' share when an attacked node is defended
///   epsilon - defender's share for defending a non-attacked node
///   gamma   - attacker's opportunity-cost rate on untouched nodes
struct CngParams {
  Rational delta;
  Rational eta;
  Rational epsilon;
  Rational gamma;

  /// Empty when 0 <= each <= 1 and delta < eta < epsilon.
  std::vector<std::string> validate() const;
};

struct CngInstance {
  int node_count = 0;
  std::vector<long long> p_d;  // defender criticality, positive integers
  std::vector<long long> p_a;  // attacker criticality, positive integers
  std::vector<Rational> d;     // defense costs, positive
  std::vector<Rational> a;     // attack costs, positive
  Rational defense_budget;     // D
  Rational attack_budget;      // A
  CngParams params;
  /// Generator metadata recorded for reproducibility (seed, ranges, ratios).
  std::map<std::string, std::string> gen;

  std::vector<std::string> validate() const;
};

/// Joint vector layout used by all CNG conversions: attacker variables
/// (alpha) occupy indices [0, V), defender variables (x) occupy [V, 2V);
/// player 0 is the attacker, player 1 the defender.
inline int cng_alpha_index(int i) { return i; }
inline int cng_x_index(const CngInstance& inst, int i) {
  return inst.node_count + i;
}

Rational attacker_payoff(const CngInstance& instance,
                         const std::vector<long long>& x,
                         const std::vector<long long>& alpha);

Rational defender_payoff(const CngInstance& instance,
                         const std::vector<long long>& x,
                         const std::vector<long long>& alpha);

/// The simultaneous game as a two-player instance with quadratic payoffs and
/// one budget constraint per player.
IPGInstance to_ipg(const CngInstance& instance);

enum class CngRole { Attacker, Defender };

struct StackelbergForm {
  PlayerProgram leader;
  std::vector<PlayerProgram> followers;
};

/// The sequential variant with the chosen leader.
StackelbergForm to_stackelberg(const CngInstance& instance, CngRole leader);

struct CngGenConfig {
  long long criticality_lo = 1, criticality_hi = 100;
  long long cost_lo = 1, cost_hi = 50;
  Rational budget_ratio_a{3, 10};
  Rational budget_ratio_d{3, 10};
  CngParams params{Rational(1, 10), Rational(1, 2), Rational(4, 5),
                   Rational(1, 20)};
};

/// Deterministic seeded instance; the draw order and all configuration are
/// recorded in the instance's gen metadata.
CngInstance generate_instance(unsigned long long seed, int node_count,
                              const CngGenConfig& config = CngGenConfig{});

enum class MetricSide { Both, SecurityOnly, AggressionOnly };

struct PriceMetrics {
  std::optional<Rational> pos;  // undefined when |f_d(point)| = 0
  std::optional<Rational> poa;  // undefined when |f_a(point)| = 0
  Rational best_defender_value;
  Rational best_attacker_value;
  Rational defender_value_at_point;
  Rational attacker_value_at_point;
  /// False when a joint-space optimization hit its limit; the corresponding
  /// best value is then the solver's incumbent (a valid lower bound on the
  /// true optimum, never below the point's own value).
  bool exact = true;
};

/// Price of security / aggression of `point` (layout per cng_alpha_index /
/// cng_x_index): ratio of the best payoff over the joint budget space to the
/// payoff at the point. Throws if the point violates the joint space.
PriceMetrics price_metrics(const CngInstance& instance, const JointPoint& point,
                           const SolverConfig& config,
                           MetricSide side = MetricSide::Both);

}  // namespace lois

#endif  // LOIS_CNG_HPP
