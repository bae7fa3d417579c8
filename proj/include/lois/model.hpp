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

#ifndef LOIS_MODEL_HPP
#define LOIS_MODEL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lois/linexpr.hpp"

namespace lois {

enum class Sense { Minimize, Maximize };

/// Quadratic form f(x) = x^T Q x + q^T x + r over the joint variable vector,
/// stored sparsely. `dim` is the joint dimension N; every referenced index
/// must be < dim.
struct QuadraticPayoff {
  int dim = 0;
  std::map<std::pair<int, int>, Rational> quad;  // (i, j) -> Q_ij, no zeros
  std::map<int, Rational> lin;                   // q_i, no zeros
  Rational offset;                               // r
  Sense sense = Sense::Minimize;

  void add_quad(int i, int j, const Rational& c);
  void add_lin(int i, const Rational& c);

  /// Exact value of the form at `point`, in the declared sense.
  Rational evaluate(const JointPoint& point) const;

  /// Same payoff expressed as a minimization (negated when sense is
  /// Maximize). Condition generation always works on this form.
  QuadraticPayoff minimization_form() const;

  bool is_linear() const { return quad.empty(); }

  /// f as a LinExpr; requires quad to be empty.
  LinExpr linear_part() const;
};

/// Contiguous block of the joint vector owned by one player, with finite
/// per-variable integer bounds.
struct VarBlock {
  int owner = 0;
  int first = 0;
  int count = 0;
  std::vector<long long> lower;
  std::vector<long long> upper;

  bool contains(int var) const { return var >= first && var < first + count; }
  bool is_binary() const {
    for (int k = 0; k < count; ++k) {
      if (lower[static_cast<std::size_t>(k)] != 0 ||
          upper[static_cast<std::size_t>(k)] != 1)
        return false;
    }
    return true;
  }
};

struct PlayerProgram {
  QuadraticPayoff payoff;
  std::vector<LinearConstraint> constraints;
  VarBlock own_block;
  bool coupled = false;
};

struct IPGInstance {
  std::vector<PlayerProgram> players;
  std::vector<VarBlock> blocks;

  int player_count() const { return static_cast<int>(players.size()); }
  int total_vars() const;
  const PlayerProgram& player(int i) const {
    return players[static_cast<std::size_t>(i)];
  }

  bool in_bounds(const JointPoint& point) const;
  long long lower_of(int var) const;
  long long upper_of(int var) const;
};

/// Exact payoff of `player` at `point`, in the player's declared sense.
Rational evaluate_payoff(const IPGInstance& instance, int player,
                         const JointPoint& point);

/// True iff every constraint of `player` holds at `point`. Box bounds are
/// not part of this check; use IPGInstance::in_bounds for those.
bool is_player_feasible(const IPGInstance& instance, int player,
                        const JointPoint& point);

struct SizeEstimate {
  long long variables = 0;
  long long constraints = 0;
};

/// Size of the assembled order-1 system: sum_i (2 n_i (m_i + 1) + n_i)
/// variables and sum_i (2 n_i (m_i + 2) + m_i) constraints, where m_i counts
/// the player's constraints after equality splitting and box bounds are
/// carried as variable bounds, not constraints.
SizeEstimate size_estimate(const IPGInstance& instance);

/// Structural diagnostics; empty means well-formed. Never throws.
std::vector<std::string> validate(const IPGInstance& instance);

/// Constraints in canonical `expr >= 0` list form: Le is negated, Eq is split
/// into two Ge rows. Condition generation and feasibility rows use this.
std::vector<LinExpr> ge_form_constraints(const PlayerProgram& player);

}  // namespace lois

#endif  // LOIS_MODEL_HPP
