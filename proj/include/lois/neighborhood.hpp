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

#ifndef LOIS_NEIGHBORHOOD_HPP
#define LOIS_NEIGHBORHOOD_HPP

#include <vector>

#include "lois/model.hpp"

namespace lois {

/// One deviation step: a sparse nonzero integer vector over a player's block
/// (offsets are block-relative) with L1 norm between 1 and the neighborhood
/// order.
struct Delta {
  std::vector<std::pair<int, long long>> steps;  // (offset, step != 0), sorted

  long long l1_norm() const {
    long long n = 0;
    for (const auto& [o, s] : steps) n += s < 0 ? -s : s;
    return n;
  }

  friend bool operator==(const Delta& a, const Delta& b) {
    return a.steps == b.steps;
  }
  friend bool operator<(const Delta& a, const Delta& b) {
    return a.steps < b.steps;
  }
};

/// All deltas in Z^n with 0 < L1 norm <= m, each exactly once. Order is
/// deterministic: supports in lexicographic order, then step vectors in
/// lexicographic order.
std::vector<Delta> enumerate_deltas(int n, int m);

/// Removes deltas that land outside the block's box for every in-box point,
/// i.e. those with some |step| > upper - lower. For binary blocks this drops
/// every move with a step of magnitude 2 or more.
std::vector<Delta> prune_deltas(const std::vector<Delta>& deltas,
                                const VarBlock& block);

/// point with the player's block shifted by delta; offsets are relative to
/// block.first.
JointPoint apply_delta(const JointPoint& point, const VarBlock& block,
                       const Delta& delta);

}  // namespace lois

#endif  // LOIS_NEIGHBORHOOD_HPP
