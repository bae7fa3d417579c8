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

#ifndef LOIS_EQUILIBRIUM_HPP
#define LOIS_EQUILIBRIUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "lois/solver.hpp"

namespace lois {

struct EquilibriumReport {
  JointPoint point;
  std::vector<Rational> per_player_payoffs;  // recomputed at report time
  std::string kind;                          // e.g. "lois-1", "stackelberg-lois-1"
  std::optional<Rational> welfare;
};

enum class GameStatus { Found, Empty, Limit };

struct GameResult {
  GameStatus status = GameStatus::Empty;
  std::optional<EquilibriumReport> report;
  long long ic_count = 0;
  SolverStats stats;
};

struct EnumerationResult {
  std::vector<EquilibriumReport> reports;
  bool exhausted = false;  // false only when a limit stopped the stream
  long long ic_count = 0;
  SolverStats stats;
};

/// Number of implication constraints the order-m program generates for the
/// whole game (all players).
long long count_implication_constraints(const IPGInstance& instance, int m);

/// A point satisfying every player's order-m conditions, or proof none
/// exists. Found points are re-verified against the semantic oracle.
GameResult solve_lois(const IPGInstance& instance, int m,
                      const SolverConfig& config);

/// Up to k distinct such points via no-good-cut enumeration.
EnumerationResult enumerate_lois(const IPGInstance& instance, int m,
                                 unsigned long long k,
                                 const SolverConfig& config);

/// The condition-set point optimizing the welfare function (welfare.sense
/// gives the direction; quadratic welfare requires binary variables).
GameResult select_lois(const IPGInstance& instance, int m,
                       const QuadraticPayoff& welfare,
                       const SolverConfig& config);

/// Exact pure-equilibrium test: feasibility plus one best-response
/// optimization per player over the player's full box. Throws Error(kLimit)
/// if a best-response solve hits a limit.
bool is_pure_nash(const IPGInstance& instance, const JointPoint& point,
                  const SolverConfig& config);

struct BruteForceSets {
  std::vector<JointPoint> lois_set;
  std::vector<JointPoint> nash_set;
};

/// Exhaustive-scan oracle realization of both solution concepts. Refuses
/// (throws) when the joint box exceeds `cap` points.
BruteForceSets brute_force_sets(const IPGInstance& instance, int m,
                                unsigned long long cap = 1000000);

/// Leader objective optimized over leader-feasible points intersected with
/// every follower's order-m condition set (optimistic tie-breaking). The
/// blocks of the given programs must partition the joint vector.
GameResult solve_stackelberg(const PlayerProgram& leader,
                             const std::vector<PlayerProgram>& followers,
                             int m, const SolverConfig& config);

}  // namespace lois

#endif  // LOIS_EQUILIBRIUM_HPP
