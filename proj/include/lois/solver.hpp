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

#ifndef LOIS_SOLVER_HPP
#define LOIS_SOLVER_HPP

#include <optional>
#include <vector>

#include "lois/encoding.hpp"

namespace lois {

struct SolverStats {
  unsigned long long nodes = 0;
  unsigned long long propagations = 0;
  double wall_ms = 0.0;
  bool used_bignum = false;

  SolverStats& operator+=(const SolverStats& o) {
    nodes += o.nodes;
    propagations += o.propagations;
    wall_ms += o.wall_ms;
    used_bignum = used_bignum || o.used_bignum;
    return *this;
  }
};

enum class SolveStatus { Feasible, Infeasible, Optimal, LimitReached };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  /// Full assignment over every encoded variable.
  std::optional<std::vector<long long>> assignment;
  /// Exact objective value (descaled) when optimizing.
  std::optional<Rational> objective_value;
  SolverStats stats;

  bool has_point() const { return assignment.has_value(); }
};

struct SolverConfig {
  double time_limit_s = 100.0;
  unsigned long long node_limit = 0;  // 0 = unlimited
  /// 0: most-constrained with original variables branched before indicator
  /// and auxiliary binaries (default); 1: most-constrained over all
  /// variables. The rule never changes results, only search effort.
  int branching_rule = 0;
  unsigned long long seed = 0;  // nonzero permutes the tie-break order
};

/// Depth-first search with bounds-consistency propagation over the box;
/// complete for bounded systems. Returns a verified point or a proof of
/// infeasibility within limits.
SolveResult find_feasible(const EncodedSystem& system, const SolverConfig& config);

/// Branch-and-bound minimization/maximization of a linear objective; exact.
/// `denominator` descales the reported objective value.
SolveResult optimize(const EncodedSystem& system, const ScaledLinExpr& objective,
                     Sense sense, const SolverConfig& config,
                     const Int& denominator = Int(1));

/// Optimizes the system's embedded objective.
SolveResult optimize(const EncodedSystem& system, const SolverConfig& config);

/// Enumerates distinct projections onto the original variables by re-solving
/// with a no-good cut on each found point.
class SolutionStream {
 public:
  SolutionStream(EncodedSystem system, SolverConfig config);

  /// Next distinct projection; nullopt when exhausted or a limit was hit
  /// (distinguish via exhausted()).
  std::optional<std::vector<long long>> next();

  bool exhausted() const { return exhausted_; }
  const SolverStats& total_stats() const { return stats_; }

 private:
  EncodedSystem working_;
  SolverConfig config_;
  bool exhausted_ = false;
  SolverStats stats_;
};

}  // namespace lois

#endif  // LOIS_SOLVER_HPP
