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

#include "lois/neighborhood.hpp"

namespace lois {

namespace {

// Extends the step assignment for support[pos..] with remaining L1 budget.
void fill_steps(const std::vector<int>& support, std::size_t pos,
                long long budget, std::vector<long long>& steps,
                std::vector<Delta>& out) {
  if (pos == support.size()) {
    Delta d;
    d.steps.reserve(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) {
      d.steps.emplace_back(support[k], steps[k]);
    }
    out.push_back(std::move(d));
    return;
  }
  // Every remaining support position needs at least |step| = 1.
  long long reserve = static_cast<long long>(support.size() - pos - 1);
  long long max_here = budget - reserve;
  for (long long s = -max_here; s <= max_here; ++s) {
    if (s == 0) continue;
    steps[pos] = s;
    fill_steps(support, pos + 1, budget - (s < 0 ? -s : s), steps, out);
  }
}

void fill_supports(int n, int m, int next, std::vector<int>& support,
                   std::vector<Delta>& out) {
  if (!support.empty()) {
    std::vector<long long> steps(support.size());
    fill_steps(support, 0, m, steps, out);
  }
  if (static_cast<int>(support.size()) == m) return;  // |support| <= L1 <= m
  for (int v = next; v < n; ++v) {
    support.push_back(v);
    fill_supports(n, m, v + 1, support, out);
    support.pop_back();
  }
}

}  // namespace

std::vector<Delta> enumerate_deltas(int n, int m) {
  if (n < 1) throw Error(Error::Kind::kInvalidArgument, "dimension must be >= 1");
  if (m < 1) throw Error(Error::Kind::kInvalidArgument, "order must be >= 1");
  std::vector<Delta> out;
  std::vector<int> support;
  fill_supports(n, m, 0, support, out);
  return out;
}

std::vector<Delta> prune_deltas(const std::vector<Delta>& deltas,
                                const VarBlock& block) {
  std::vector<Delta> out;
  out.reserve(deltas.size());
  for (const auto& d : deltas) {
    bool keep = true;
    for (const auto& [offset, step] : d.steps) {
      long long width = block.upper[static_cast<std::size_t>(offset)] -
                        block.lower[static_cast<std::size_t>(offset)];
      long long mag = step < 0 ? -step : step;
      if (mag > width) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(d);
  }
  return out;
}

JointPoint apply_delta(const JointPoint& point, const VarBlock& block,
                       const Delta& delta) {
  JointPoint moved = point;
  for (const auto& [offset, step] : delta.steps) {
    moved.values[static_cast<std::size_t>(block.first + offset)] += step;
  }
  return moved;
}

}  // namespace lois
