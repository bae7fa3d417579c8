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

#include "lois/equilibrium.hpp"

#include <algorithm>

namespace lois {

namespace {

std::vector<ConditionSet> build_all_conditions(const IPGInstance& instance,
                                               int m) {
  std::vector<ConditionSet> sets;
  sets.reserve(instance.players.size());
  for (int i = 0; i < instance.player_count(); ++i) {
    sets.push_back(build_conditions(instance, i, m));
  }
  return sets;
}

long long total_ics(const std::vector<ConditionSet>& sets) {
  long long n = 0;
  for (const auto& s : sets) n += static_cast<long long>(s.implications.size());
  return n;
}

EquilibriumReport make_report(const IPGInstance& instance,
                              const JointPoint& point, std::string kind,
                              std::optional<Rational> welfare) {
  EquilibriumReport rep;
  rep.point = point;
  rep.kind = std::move(kind);
  rep.welfare = std::move(welfare);
  rep.per_player_payoffs.reserve(instance.players.size());
  for (int i = 0; i < instance.player_count(); ++i) {
    rep.per_player_payoffs.push_back(evaluate_payoff(instance, i, point));
  }
  return rep;
}

JointPoint project(const std::vector<long long>& assignment, int original_count) {
  JointPoint p;
  p.values.assign(assignment.begin(), assignment.begin() + original_count);
  return p;
}

void verify_lois_point(const IPGInstance& instance, const JointPoint& point,
                       int m) {
  for (int i = 0; i < instance.player_count(); ++i) {
    if (!check_point_locally_optimal(instance, i, point, m)) {
      throw Error(Error::Kind::kInvalidArgument,
                  "internal error: solver point fails the order-" +
                      std::to_string(m) + " oracle for player " +
                      std::to_string(i));
    }
  }
}

void require_valid(const IPGInstance& instance) {
  auto diags = validate(instance);
  if (!diags.empty()) {
    throw Error(Error::Kind::kInvalidArgument, "invalid instance: " + diags.front());
  }
}

}  // namespace

long long count_implication_constraints(const IPGInstance& instance, int m) {
  return total_ics(build_all_conditions(instance, m));
}

GameResult solve_lois(const IPGInstance& instance, int m,
                      const SolverConfig& config) {
  require_valid(instance);
  auto sets = build_all_conditions(instance, m);
  EncodedSystem system =
      assemble_from_conditions(instance.blocks, {}, sets, std::nullopt);
  SolveResult r = find_feasible(system, config);

  GameResult out;
  out.ic_count = total_ics(sets);
  out.stats = r.stats;
  switch (r.status) {
    case SolveStatus::Feasible: {
      JointPoint point = project(*r.assignment, system.original_count);
      verify_lois_point(instance, point, m);
      out.status = GameStatus::Found;
      out.report = make_report(instance, point, "lois-" + std::to_string(m),
                               std::nullopt);
      break;
    }
    case SolveStatus::Infeasible:
      out.status = GameStatus::Empty;
      break;
    default:
      out.status = GameStatus::Limit;
      break;
  }
  return out;
}

EnumerationResult enumerate_lois(const IPGInstance& instance, int m,
                                 unsigned long long k,
                                 const SolverConfig& config) {
  require_valid(instance);
  auto sets = build_all_conditions(instance, m);
  EncodedSystem system =
      assemble_from_conditions(instance.blocks, {}, sets, std::nullopt);

  EnumerationResult out;
  out.ic_count = total_ics(sets);
  SolutionStream stream(std::move(system), config);
  for (unsigned long long i = 0; i < k; ++i) {
    auto projection = stream.next();
    if (!projection.has_value()) break;
    JointPoint point;
    point.values = *projection;
    verify_lois_point(instance, point, m);
    out.reports.push_back(
        make_report(instance, point, "lois-" + std::to_string(m), std::nullopt));
  }
  out.exhausted = stream.exhausted();
  out.stats = stream.total_stats();
  return out;
}

GameResult select_lois(const IPGInstance& instance, int m,
                       const QuadraticPayoff& welfare,
                       const SolverConfig& config) {
  require_valid(instance);
  auto sets = build_all_conditions(instance, m);
  EncodedSystem system =
      assemble_from_conditions(instance.blocks, {}, sets, welfare);
  SolveResult r = optimize(system, config);

  GameResult out;
  out.ic_count = total_ics(sets);
  out.stats = r.stats;
  switch (r.status) {
    case SolveStatus::Optimal: {
      JointPoint point = project(*r.assignment, system.original_count);
      verify_lois_point(instance, point, m);
      // The linearized objective agrees with the welfare form at 0/1 points;
      // recompute from the form as the authoritative value.
      Rational value = welfare.evaluate(point);
      if (r.objective_value.has_value() && *r.objective_value != value) {
        throw Error(Error::Kind::kInvalidArgument,
                    "internal error: linearized welfare mismatch");
      }
      out.status = GameStatus::Found;
      out.report = make_report(instance, point, "lois-" + std::to_string(m),
                               value);
      break;
    }
    case SolveStatus::Infeasible:
      out.status = GameStatus::Empty;
      break;
    case SolveStatus::LimitReached:
      out.status = GameStatus::Limit;
      if (r.assignment.has_value()) {
        JointPoint point = project(*r.assignment, system.original_count);
        verify_lois_point(instance, point, m);
        out.report = make_report(instance, point, "lois-" + std::to_string(m),
                                 welfare.evaluate(point));
      }
      break;
    default:
      out.status = GameStatus::Limit;
      break;
  }
  return out;
}

namespace {

/// Substitutes the fixed values of every variable outside `block` into the
/// payoff, yielding a quadratic over the player's own variables only.
QuadraticPayoff restrict_to_block(const QuadraticPayoff& payoff,
                                  const VarBlock& block,
                                  const JointPoint& point) {
  QuadraticPayoff out;
  out.dim = payoff.dim;
  out.sense = payoff.sense;
  out.offset = payoff.offset;
  for (const auto& [ij, c] : payoff.quad) {
    auto [i, j] = ij;
    bool i_own = block.contains(i), j_own = block.contains(j);
    if (i_own && j_own) {
      out.add_quad(i, j, c);
    } else if (i_own) {
      out.add_lin(i, c * Rational::from_int64(point[j]));
    } else if (j_own) {
      out.add_lin(j, c * Rational::from_int64(point[i]));
    } else {
      out.offset += c * Rational::from_int64(point[i]) *
                    Rational::from_int64(point[j]);
    }
  }
  for (const auto& [i, c] : payoff.lin) {
    if (block.contains(i)) {
      out.add_lin(i, c);
    } else {
      out.offset += c * Rational::from_int64(point[i]);
    }
  }
  return out;
}

/// Exact best-response value of one player with opponents fixed at `point`,
/// or nullopt when the player has no feasible response.
std::optional<Rational> best_response_value(const IPGInstance& instance,
                                            int player, const JointPoint& point,
                                            const SolverConfig& config) {
  const PlayerProgram& p = instance.player(player);
  const VarBlock& block = p.own_block;

  if (block.is_binary()) {
    // Clamp opponent variables, restrict the payoff to the block, optimize.
    std::vector<VarBlock> blocks;
    for (const auto& b : instance.blocks) {
      VarBlock copy = b;
      if (b.owner != player) {
        for (int k = 0; k < b.count; ++k) {
          copy.lower[static_cast<std::size_t>(k)] = point[b.first + k];
          copy.upper[static_cast<std::size_t>(k)] = point[b.first + k];
        }
      }
      blocks.push_back(std::move(copy));
    }
    std::vector<std::vector<LinExpr>> feasibility;
    // ge_form rows of this player only; opponents are fixed, their
    // constraints do not bind the response.
    PlayerProgram self = p;
    feasibility.push_back(ge_form_constraints(self));
    QuadraticPayoff objective = restrict_to_block(p.payoff, block, point);
    EncodedSystem system =
        assemble_from_conditions(blocks, feasibility, {}, objective);
    SolveResult r = optimize(system, config);
    if (r.status == SolveStatus::Optimal) return r.objective_value;
    if (r.status == SolveStatus::Infeasible) return std::nullopt;
    throw Error(Error::Kind::kLimit,
                "best-response solve hit a limit for player " +
                    std::to_string(player));
  }

  // General integer block: exhaustive scan of the own box.
  unsigned long long cells = 1;
  for (int k = 0; k < block.count; ++k) {
    unsigned long long width = static_cast<unsigned long long>(
        block.upper[static_cast<std::size_t>(k)] -
        block.lower[static_cast<std::size_t>(k)] + 1);
    if (cells > 2000000ULL / width) {
      throw Error(Error::Kind::kLimit, "own box too large for exact scan");
    }
    cells *= width;
  }
  JointPoint probe = point;
  for (int k = 0; k < block.count; ++k) {
    probe.values[static_cast<std::size_t>(block.first + k)] =
        block.lower[static_cast<std::size_t>(k)];
  }
  bool maximize = p.payoff.sense == Sense::Maximize;
  std::optional<Rational> best;
  while (true) {
    if (is_player_feasible(instance, player, probe)) {
      Rational v = p.payoff.evaluate(probe);
      if (!best.has_value() || (maximize ? v > *best : v < *best)) best = v;
    }
    int k = 0;
    for (; k < block.count; ++k) {
      auto idx = static_cast<std::size_t>(block.first + k);
      if (probe.values[idx] < block.upper[static_cast<std::size_t>(k)]) {
        ++probe.values[idx];
        break;
      }
      probe.values[idx] = block.lower[static_cast<std::size_t>(k)];
    }
    if (k == block.count) break;
  }
  return best;
}

}  // namespace

bool is_pure_nash(const IPGInstance& instance, const JointPoint& point,
                  const SolverConfig& config) {
  require_valid(instance);
  if (!instance.in_bounds(point)) return false;
  for (int i = 0; i < instance.player_count(); ++i) {
    if (!is_player_feasible(instance, i, point)) return false;
  }
  for (int i = 0; i < instance.player_count(); ++i) {
    const PlayerProgram& p = instance.player(i);
    Rational here = p.payoff.evaluate(point);
    std::optional<Rational> best = best_response_value(instance, i, point, config);
    if (!best.has_value()) {
      throw Error(Error::Kind::kInvalidArgument,
                  "feasible point but infeasible best-response program");
    }
    bool maximize = p.payoff.sense == Sense::Maximize;
    if (maximize ? *best > here : *best < here) return false;
  }
  return true;
}

BruteForceSets brute_force_sets(const IPGInstance& instance, int m,
                                unsigned long long cap) {
  require_valid(instance);
  int n = instance.total_vars();
  unsigned long long cells = 1;
  for (int v = 0; v < n; ++v) {
    unsigned long long width = static_cast<unsigned long long>(
        instance.upper_of(v) - instance.lower_of(v) + 1);
    if (width == 0 || cells > cap / width) {
      throw Error(Error::Kind::kLimit, "joint box exceeds the oracle cap");
    }
    cells *= width;
  }

  BruteForceSets out;
  JointPoint point;
  point.values.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) point.values[static_cast<std::size_t>(v)] = instance.lower_of(v);

  // Best-response value tables, one per player, keyed by the mixed-radix
  // index of the opponents' coordinates.
  int players = instance.player_count();
  std::vector<std::vector<std::optional<Rational>>> best(players);
  std::vector<unsigned long long> opp_cells(players, 1);
  for (int i = 0; i < players; ++i) {
    const VarBlock& block = instance.player(i).own_block;
    unsigned long long c = 1;
    for (int v = 0; v < n; ++v) {
      if (block.contains(v)) continue;
      c *= static_cast<unsigned long long>(instance.upper_of(v) -
                                           instance.lower_of(v) + 1);
    }
    opp_cells[static_cast<std::size_t>(i)] = c;
    best[static_cast<std::size_t>(i)].assign(c, std::nullopt);
  }
  auto opp_index = [&](int player, const JointPoint& pt) {
    const VarBlock& block = instance.player(player).own_block;
    unsigned long long idx = 0;
    for (int v = 0; v < n; ++v) {
      if (block.contains(v)) continue;
      unsigned long long width = static_cast<unsigned long long>(
          instance.upper_of(v) - instance.lower_of(v) + 1);
      idx = idx * width + static_cast<unsigned long long>(pt[v] - instance.lower_of(v));
    }
    return idx;
  };

  auto advance = [&](JointPoint& pt) {
    int v = 0;
    for (; v < n; ++v) {
      auto idx = static_cast<std::size_t>(v);
      if (pt.values[idx] < instance.upper_of(v)) {
        ++pt.values[idx];
        break;
      }
      pt.values[idx] = instance.lower_of(v);
    }
    return v < n;
  };

  // Pass 1: best-response tables.
  do {
    for (int i = 0; i < players; ++i) {
      if (!is_player_feasible(instance, i, point)) continue;
      Rational v = instance.player(i).payoff.evaluate(point);
      auto& slot = best[static_cast<std::size_t>(i)][opp_index(i, point)];
      bool maximize = instance.player(i).payoff.sense == Sense::Maximize;
      if (!slot.has_value() || (maximize ? v > *slot : v < *slot)) slot = v;
    }
  } while (advance(point));

  // Pass 2: classify points.
  for (int v = 0; v < n; ++v) point.values[static_cast<std::size_t>(v)] = instance.lower_of(v);
  do {
    bool all_feasible = true;
    for (int i = 0; i < players && all_feasible; ++i) {
      all_feasible = is_player_feasible(instance, i, point);
    }
    if (!all_feasible) continue;

    bool lois = true;
    for (int i = 0; i < players && lois; ++i) {
      lois = check_point_locally_optimal(instance, i, point, m);
    }
    if (lois) out.lois_set.push_back(point);

    bool nash = true;
    for (int i = 0; i < players && nash; ++i) {
      const auto& slot = best[static_cast<std::size_t>(i)][opp_index(i, point)];
      Rational here = instance.player(i).payoff.evaluate(point);
      bool maximize = instance.player(i).payoff.sense == Sense::Maximize;
      nash = slot.has_value() && !(maximize ? *slot > here : *slot < here);
    }
    if (nash) out.nash_set.push_back(point);
  } while (advance(point));

  return out;
}

GameResult solve_stackelberg(const PlayerProgram& leader,
                             const std::vector<PlayerProgram>& followers,
                             int m, const SolverConfig& config) {
  // Re-index roles: leader becomes player 0 of a working instance whose
  // blocks keep their joint variable layout.
  IPGInstance inst;
  PlayerProgram lead = leader;
  lead.own_block.owner = 0;
  inst.players.push_back(lead);
  for (std::size_t k = 0; k < followers.size(); ++k) {
    PlayerProgram f = followers[k];
    f.own_block.owner = static_cast<int>(k) + 1;
    inst.players.push_back(std::move(f));
  }
  for (const auto& p : inst.players) inst.blocks.push_back(p.own_block);
  require_valid(inst);

  std::vector<ConditionSet> follower_sets;
  for (int i = 1; i < inst.player_count(); ++i) {
    follower_sets.push_back(build_conditions(inst, i, m));
  }
  std::vector<std::vector<LinExpr>> plain = {ge_form_constraints(inst.player(0))};
  EncodedSystem system = assemble_from_conditions(
      inst.blocks, plain, follower_sets, inst.player(0).payoff);
  SolveResult r = optimize(system, config);

  GameResult out;
  out.ic_count = total_ics(follower_sets);
  out.stats = r.stats;
  if (r.status == SolveStatus::Optimal ||
      (r.status == SolveStatus::LimitReached && r.assignment.has_value())) {
    JointPoint point = project(*r.assignment, system.original_count);
    for (int i = 1; i < inst.player_count(); ++i) {
      if (!check_point_locally_optimal(inst, i, point, m)) {
        throw Error(Error::Kind::kInvalidArgument,
                    "internal error: follower conditions violated");
      }
    }
    out.status = r.status == SolveStatus::Optimal ? GameStatus::Found
                                                  : GameStatus::Limit;
    Rational value = inst.player(0).payoff.evaluate(point);
    out.report = make_report(inst, point,
                             "stackelberg-lois-" + std::to_string(m), value);
  } else if (r.status == SolveStatus::Infeasible) {
    out.status = GameStatus::Empty;
  } else {
    out.status = GameStatus::Limit;
  }
  return out;
}

}  // namespace lois
