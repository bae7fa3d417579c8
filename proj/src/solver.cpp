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

#include "lois/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <tuple>

namespace lois {

namespace {

static_assert(sizeof(long) == 8, "engine assumes 64-bit long");

long long t_floor_div(long long a, long long b) { return floor_div(a, b); }
long long t_ceil_div(long long a, long long b) { return ceil_div(a, b); }

Int t_floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Int t_ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

long long to_engine_value(const Int& v, long long /*tag*/) {
  return mpz_get_si(v.get_mpz_t());
}
Int to_engine_value(const Int& v, const Int& /*tag*/) { return v; }

long long from_ll(long long v, long long /*tag*/) { return v; }
Int from_ll(long long v, const Int& /*tag*/) {
  return Int(static_cast<long>(v));
}

/// Worst-case |row value| over the box, used to prove the int64 path safe.
Int row_magnitude(const ScaledLinExpr& e, const std::vector<EncodedVar>& vars) {
  Int s;
  mpz_abs(s.get_mpz_t(), e.constant.get_mpz_t());
  for (const auto& [v, c] : e.coeffs) {
    const auto& var = vars[static_cast<std::size_t>(v)];
    long long mag = std::max(var.lower < 0 ? -var.lower : var.lower,
                             var.upper < 0 ? -var.upper : var.upper);
    Int a;
    mpz_abs(a.get_mpz_t(), c.get_mpz_t());
    s += a * Int(std::to_string(mag));
  }
  return s;
}

struct SearchLimits {
  std::chrono::steady_clock::time_point deadline;
  bool has_deadline = false;
  unsigned long long node_limit = 0;
};

template <class T>
class Engine {
 public:
  Engine(const EncodedSystem& system, const SolverConfig& config,
         const ScaledLinExpr* objective, Sense sense)
      : config_(config) {
    int n = static_cast<int>(system.variables.size());
    lo_.resize(n);
    hi_.resize(n);
    rows_of_var_.resize(n);
    is_original_.resize(n);
    hints_.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      lo_[v] = from_ll(system.variables[static_cast<std::size_t>(v)].lower, T{});
      hi_[v] = from_ll(system.variables[static_cast<std::size_t>(v)].upper, T{});
      is_original_[static_cast<std::size_t>(v)] =
          system.variables[static_cast<std::size_t>(v)].kind == VarKind::Original;
    }
    if (objective != nullptr) {
      for (const auto& [v, h] : system.branch_hints) {
        hints_[static_cast<std::size_t>(v)] = static_cast<signed char>(h);
      }
    }
    for (const auto& row : system.constraints) {
      add_row(row.expr);
    }
    if (objective != nullptr) {
      optimizing_ = true;
      // Internal form always minimizes.
      for (const auto& [v, c] : objective->coeffs) {
        T cv = to_engine_value(c, T());
        obj_terms_.emplace_back(v, sense == Sense::Maximize ? T(-cv) : cv);
      }
      T oc = to_engine_value(objective->constant, T());
      obj_const_ = sense == Sense::Maximize ? T(-oc) : oc;
      // Placeholder incumbent-cut row: (incumbent - 1) - obj >= 0. Activated
      // once an incumbent exists.
      Row cut;
      for (const auto& [v, c] : obj_terms_) {
        cut.terms.emplace_back(v, T(-c));
        rows_of_var_[static_cast<std::size_t>(v)].push_back(
            static_cast<int>(rows_.size()));
      }
      cut.constant = T(0);
      cut.active = false;
      obj_row_ = static_cast<int>(rows_.size());
      rows_.push_back(std::move(cut));
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    if (config.seed != 0) {
      // splitmix64-driven deterministic permutation of the tie-break order.
      unsigned long long s = config.seed;
      auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ULL;
        unsigned long long z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
      };
      for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(next() % static_cast<unsigned long long>(i + 1));
        std::swap(order_[static_cast<std::size_t>(i)], order_[static_cast<std::size_t>(j)]);
      }
    }
    rank_.resize(n);
    for (int i = 0; i < n; ++i) rank_[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;
  }

  // Runs the search. Returns false when a limit was hit before exhaustion.
  bool run(const SearchLimits& limits) {
    limits_ = limits;
    limit_hit_ = false;
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) enqueue(r);
    dfs();
    return !limit_hit_;
  }

  bool found() const { return found_; }
  const std::vector<long long>& solution() const { return solution_; }
  bool has_incumbent() const { return has_incumbent_; }
  const std::vector<long long>& incumbent() const { return incumbent_; }
  T incumbent_value() const { return incumbent_value_; }  // minimization form
  unsigned long long nodes() const { return nodes_; }
  unsigned long long propagations() const { return propagations_; }

 private:
  struct Row {
    std::vector<std::pair<int, T>> terms;
    T constant{};
    bool active = true;
  };

  void add_row(const ScaledLinExpr& expr) {
    Row row;
    row.terms.reserve(expr.coeffs.size());
    for (const auto& [v, c] : expr.coeffs) {
      row.terms.emplace_back(v, to_engine_value(c, T()));
      rows_of_var_[static_cast<std::size_t>(v)].push_back(
          static_cast<int>(rows_.size()));
    }
    row.constant = to_engine_value(expr.constant, T());
    rows_.push_back(std::move(row));
  }

  void enqueue(int r) {
    if (!rows_[static_cast<std::size_t>(r)].active) return;
    if (in_queue_.size() < rows_.size()) in_queue_.resize(rows_.size(), false);
    if (in_queue_[static_cast<std::size_t>(r)]) return;
    in_queue_[static_cast<std::size_t>(r)] = true;
    queue_.push_back(r);
  }

  void enqueue_var_rows(int v) {
    for (int r : rows_of_var_[static_cast<std::size_t>(v)]) enqueue(r);
  }

  void set_lo(int v, const T& val) {
    trail_.emplace_back(v, true, lo_[static_cast<std::size_t>(v)]);
    lo_[static_cast<std::size_t>(v)] = val;
    ++propagations_;
    enqueue_var_rows(v);
  }
  void set_hi(int v, const T& val) {
    trail_.emplace_back(v, false, hi_[static_cast<std::size_t>(v)]);
    hi_[static_cast<std::size_t>(v)] = val;
    ++propagations_;
    enqueue_var_rows(v);
  }

  std::size_t trail_mark() const { return trail_.size(); }
  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      auto& [v, is_lo, old] = trail_.back();
      if (is_lo)
        lo_[static_cast<std::size_t>(v)] = old;
      else
        hi_[static_cast<std::size_t>(v)] = old;
      trail_.pop_back();
    }
  }

  // Bounds-consistency fixpoint. Returns false on conflict.
  bool propagate() {
    while (!queue_.empty()) {
      int r = queue_.front();
      queue_.pop_front();
      in_queue_[static_cast<std::size_t>(r)] = false;
      Row& row = rows_[static_cast<std::size_t>(r)];
      if (!row.active) continue;
      T max_sum = row.constant;
      T min_sum = row.constant;
      for (const auto& [v, c] : row.terms) {
        if (c > T(0)) {
          max_sum += c * hi_[static_cast<std::size_t>(v)];
          min_sum += c * lo_[static_cast<std::size_t>(v)];
        } else {
          max_sum += c * lo_[static_cast<std::size_t>(v)];
          min_sum += c * hi_[static_cast<std::size_t>(v)];
        }
      }
      if (max_sum < T(0)) {
        queue_.clear();
        std::fill(in_queue_.begin(), in_queue_.end(), false);
        return false;
      }
      if (min_sum >= T(0)) continue;  // entailed under current bounds
      for (const auto& [v, c] : row.terms) {
        T term_max = c > T(0) ? T(c * hi_[static_cast<std::size_t>(v)])
                              : T(c * lo_[static_cast<std::size_t>(v)]);
        T rest_max = max_sum - term_max;
        // Need c * x_v >= -rest_max.
        if (c > T(0)) {
          T bound = t_ceil_div(T(-rest_max), c);
          if (bound > lo_[static_cast<std::size_t>(v)]) {
            if (bound > hi_[static_cast<std::size_t>(v)]) {
              queue_.clear();
              std::fill(in_queue_.begin(), in_queue_.end(), false);
              return false;
            }
            set_lo(v, bound);
          }
        } else {
          T bound = t_floor_div(T(-rest_max), c);
          if (bound < hi_[static_cast<std::size_t>(v)]) {
            if (bound < lo_[static_cast<std::size_t>(v)]) {
              queue_.clear();
              std::fill(in_queue_.begin(), in_queue_.end(), false);
              return false;
            }
            set_hi(v, bound);
          }
        }
      }
    }
    return true;
  }

  bool check_limits() {
    if (limits_.node_limit != 0 && nodes_ > limits_.node_limit) {
      limit_hit_ = true;
      return false;
    }
    if (limits_.has_deadline && (nodes_ & 255ULL) == 0ULL &&
        std::chrono::steady_clock::now() > limits_.deadline) {
      limit_hit_ = true;
      return false;
    }
    return true;
  }

  // Rule 0 (default): most-constrained unfixed variable, original variables
  // strictly before indicators/auxiliaries (those are pinned by propagation
  // once the originals are fixed; branching them first thrashes). Rule 1:
  // plain most-constrained over all variables. Ties by rank either way.
  int pick_var() const {
    int best = -1;
    T best_width{};
    bool best_original = false;
    bool layered = config_.branching_rule == 0;
    for (int v = 0; v < static_cast<int>(lo_.size()); ++v) {
      T width = hi_[static_cast<std::size_t>(v)] - lo_[static_cast<std::size_t>(v)];
      if (width == T(0)) continue;
      bool original = is_original_[static_cast<std::size_t>(v)];
      bool better;
      if (best == -1) {
        better = true;
      } else if (layered && original != best_original) {
        better = original;
      } else if (width != best_width) {
        better = width < best_width;
      } else {
        better = rank_[static_cast<std::size_t>(v)] < rank_[static_cast<std::size_t>(best)];
      }
      if (better) {
        best = v;
        best_width = width;
        best_original = original;
      }
    }
    return best;
  }

  T objective_value_at_fixed() const {
    T v = obj_const_;
    for (const auto& [var, c] : obj_terms_) v += c * lo_[static_cast<std::size_t>(var)];
    return v;
  }

  T objective_lower_bound() const {
    T v = obj_const_;
    for (const auto& [var, c] : obj_terms_) {
      v += c > T(0) ? c * lo_[static_cast<std::size_t>(var)]
                    : c * hi_[static_cast<std::size_t>(var)];
    }
    return v;
  }

  void record_leaf() {
    if (optimizing_) {
      T value = objective_value_at_fixed();
      if (!has_incumbent_ || value < incumbent_value_) {
        has_incumbent_ = true;
        incumbent_value_ = value;
        incumbent_.resize(lo_.size());
        for (std::size_t v = 0; v < lo_.size(); ++v) {
          incumbent_[v] = static_cast<long long>(mpz_like_to_ll(lo_[v]));
        }
        // Tighten the global incumbent cut: obj <= value - 1.
        Row& cut = rows_[static_cast<std::size_t>(obj_row_)];
        cut.constant = value - T(1) - obj_const_;
        cut.active = true;
      }
    } else {
      found_ = true;
      solution_.resize(lo_.size());
      for (std::size_t v = 0; v < lo_.size(); ++v) {
        solution_[v] = static_cast<long long>(mpz_like_to_ll(lo_[v]));
      }
    }
  }

  static long long mpz_like_to_ll(long long v) { return v; }
  static long long mpz_like_to_ll(const Int& v) { return mpz_get_si(v.get_mpz_t()); }

  void dfs() {
    ++nodes_;
    if (!check_limits()) return;
    std::size_t mark = trail_mark();
    if (!propagate()) {
      undo_to(mark);
      return;
    }
    if (optimizing_ && has_incumbent_) {
      if (objective_lower_bound() >= incumbent_value_) {
        undo_to(mark);
        return;
      }
    }
    int v = pick_var();
    if (v == -1) {
      record_leaf();
      undo_to(mark);
      return;
    }
    for (const T& val : value_order(v)) {
      std::size_t branch_mark = trail_mark();
      set_lo(v, val);
      set_hi(v, val);
      dfs();
      undo_to(branch_mark);
      if (limit_hit_) break;
      if (!optimizing_ && found_) break;
    }
    undo_to(mark);
  }

  std::vector<T> value_order(int v) const {
    T lo = lo_[static_cast<std::size_t>(v)];
    T hi = hi_[static_cast<std::size_t>(v)];
    std::vector<T> vals;
    for (T x = lo; x <= hi; x += 1) vals.push_back(x);
    if (!optimizing_) return vals;
    if (hints_[static_cast<std::size_t>(v)] != 0) {
      if (hints_[static_cast<std::size_t>(v)] > 0) {
        std::reverse(vals.begin(), vals.end());
      }
      return vals;
    }
    if (lo == T(0) && hi == T(1)) {
      // Branch the improving value of a binary first (negative coefficient in
      // the internal minimization form means 1 improves).
      for (const auto& [var, c] : obj_terms_) {
        if (var == v) {
          if (c < T(0)) std::swap(vals[0], vals[1]);
          break;
        }
      }
    }
    return vals;
  }

  SolverConfig config_;
  std::vector<T> lo_, hi_;
  std::vector<bool> is_original_;
  std::vector<signed char> hints_;
  std::vector<Row> rows_;
  std::vector<std::vector<int>> rows_of_var_;
  std::vector<int> order_, rank_;
  std::vector<std::tuple<int, bool, T>> trail_;
  std::deque<int> queue_;
  std::vector<bool> in_queue_;

  bool optimizing_ = false;
  std::vector<std::pair<int, T>> obj_terms_;
  T obj_const_{};
  int obj_row_ = -1;

  SearchLimits limits_;
  bool limit_hit_ = false;
  bool found_ = false;
  std::vector<long long> solution_;
  bool has_incumbent_ = false;
  std::vector<long long> incumbent_;
  T incumbent_value_{};
  unsigned long long nodes_ = 0;
  unsigned long long propagations_ = 0;
};

bool fits_int64(const EncodedSystem& system, const ScaledLinExpr* objective) {
  const Int threshold = Int(1) << 60;
  for (const auto& row : system.constraints) {
    if (row_magnitude(row.expr, system.variables) > threshold) return false;
  }
  if (objective != nullptr &&
      row_magnitude(*objective, system.variables) > threshold) {
    return false;
  }
  for (const auto& v : system.variables) {
    if (v.lower <= -(1LL << 60) || v.upper >= (1LL << 60)) return false;
  }
  return true;
}

SearchLimits make_limits(const SolverConfig& config) {
  SearchLimits limits;
  limits.node_limit = config.node_limit;
  if (config.time_limit_s > 0) {
    limits.has_deadline = true;
    limits.deadline = std::chrono::steady_clock::now() +
                      std::chrono::microseconds(static_cast<long long>(
                          config.time_limit_s * 1e6));
  }
  return limits;
}

template <class T>
SolveResult run_engine(const EncodedSystem& system, const SolverConfig& config,
                       const ScaledLinExpr* objective, Sense sense,
                       const Int& denominator) {
  auto start = std::chrono::steady_clock::now();
  Engine<T> engine(system, config, objective, sense);
  bool completed = engine.run(make_limits(config));

  SolveResult result;
  result.stats.nodes = engine.nodes();
  result.stats.propagations = engine.propagations();
  result.stats.used_bignum = !std::is_same_v<T, long long>;

  auto finish = [&](SolveResult r) {
    r.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return r;
  };

  if (objective == nullptr) {
    if (engine.found()) {
      if (!system.assignment_feasible(engine.solution())) {
        throw Error(Error::Kind::kInvalidArgument,
                    "internal error: engine returned an infeasible point");
      }
      result.status = SolveStatus::Feasible;
      result.assignment = engine.solution();
    } else {
      result.status = completed ? SolveStatus::Infeasible : SolveStatus::LimitReached;
    }
    return finish(std::move(result));
  }

  if (engine.has_incumbent()) {
    if (!system.assignment_feasible(engine.incumbent())) {
      throw Error(Error::Kind::kInvalidArgument,
                  "internal error: engine returned an infeasible point");
    }
    result.status = completed ? SolveStatus::Optimal : SolveStatus::LimitReached;
    result.assignment = engine.incumbent();
    // Exact descaled objective value in the caller's sense.
    Int raw = objective->evaluate(engine.incumbent());
    result.objective_value = Rational(raw, denominator);
  } else {
    result.status = completed ? SolveStatus::Infeasible : SolveStatus::LimitReached;
  }
  return finish(std::move(result));
}

SolveResult dispatch(const EncodedSystem& system, const SolverConfig& config,
                     const ScaledLinExpr* objective, Sense sense,
                     const Int& denominator) {
  if (fits_int64(system, objective)) {
    return run_engine<long long>(system, config, objective, sense, denominator);
  }
  return run_engine<Int>(system, config, objective, sense, denominator);
}

}  // namespace

SolveResult find_feasible(const EncodedSystem& system, const SolverConfig& config) {
  return dispatch(system, config, nullptr, Sense::Minimize, Int(1));
}

SolveResult optimize(const EncodedSystem& system, const ScaledLinExpr& objective,
                     Sense sense, const SolverConfig& config,
                     const Int& denominator) {
  return dispatch(system, config, &objective, sense, denominator);
}

SolveResult optimize(const EncodedSystem& system, const SolverConfig& config) {
  if (!system.objective.has_value()) {
    throw Error(Error::Kind::kInvalidArgument, "system has no objective");
  }
  return optimize(system, *system.objective, system.objective_sense, config,
                  system.objective_denominator);
}

SolutionStream::SolutionStream(EncodedSystem system, SolverConfig config)
    : working_(std::move(system)), config_(config) {}

std::optional<std::vector<long long>> SolutionStream::next() {
  if (exhausted_) return std::nullopt;
  SolveResult r = find_feasible(working_, config_);
  stats_ += r.stats;
  if (r.status == SolveStatus::Feasible) {
    std::vector<long long> projection(
        r.assignment->begin(),
        r.assignment->begin() + working_.original_count);
    exclusion_cut(projection, working_);
    return projection;
  }
  if (r.status == SolveStatus::Infeasible) exhausted_ = true;
  return std::nullopt;
}

}  // namespace lois
