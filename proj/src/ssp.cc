// Copyright 2026 The mcfpred Authors.
//
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

#include "mcfpred/ssp.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace mcfpred {
namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

struct Label {
  std::int64_t dist;
  NodeIndex node;
  bool operator>(const Label& o) const {
    return dist != o.dist ? dist > o.dist : node > o.node;
  }
};

}  // namespace

SolveResult ssp_solve(const Instance& inst) {
  feasibility_precheck(inst);
  const auto start = std::chrono::steady_clock::now();
  const NodeIndex n = inst.node_count();

  // Put every arc at its lower bound, except negative-cost arcs which start
  // saturated. The residual network then has only non-negative costs, so
  // zero potentials are valid.
  Flow x(inst.arc_count());
  for (ArcIndex e = 0; e < inst.arc_count(); ++e) {
    const Arc& a = inst.arc(e);
    x[e] = a.cost < 0 ? a.upper : a.lower;
  }
  SurplusVector excess = surplus(inst, x);
  std::vector<std::int64_t> potential(n, 0);
  SolveStats stats;

  std::vector<std::int64_t> dist(n);
  std::vector<IncidentArc> parent(n);
  std::vector<char> done(n);
  std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;

  const auto residual = [&](ArcIndex e, bool forward) {
    const Arc& a = inst.arc(e);
    return forward ? a.upper - x[e] : x[e] - a.lower;
  };

  while (true) {
    bool any_excess = false;
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::fill(done.begin(), done.end(), 0);
    for (NodeIndex v = 0; v < n; ++v) {
      if (excess[v] > 0) {
        any_excess = true;
        dist[v] = 0;
        parent[v] = {-1, true};
        heap.push({0, v});
      }
    }
    if (!any_excess) break;

    NodeIndex target = -1;
    std::int64_t reached_max = 0;
    while (!heap.empty()) {
      const Label top = heap.top();
      heap.pop();
      if (done[top.node] || top.dist != dist[top.node]) continue;
      const NodeIndex u = top.node;
      done[u] = 1;
      reached_max = std::max(reached_max, top.dist);
      ++stats.node_iterations;
      if (excess[u] < 0 && target < 0) target = u;
      for (const IncidentArc ia : inst.incident(u)) {
        if (residual(ia.arc, ia.forward) <= 0) continue;
        const Arc& a = inst.arc(ia.arc);
        const NodeIndex w = ia.forward ? a.head : a.tail;
        if (done[w]) continue;
        const std::int64_t cost = ia.forward ? a.cost : -a.cost;
        const std::int64_t nd = top.dist + cost + potential[u] - potential[w];
        if (nd < dist[w]) {
          dist[w] = nd;
          parent[w] = ia;
          heap.push({nd, w});
        }
      }
    }
    if (target < 0) {
      throw InfeasibleError(
          "no residual path from an excess node to a deficit node");
    }

    // Unreached nodes move by the largest settled distance, which keeps
    // every residual reduced cost non-negative.
    for (NodeIndex v = 0; v < n; ++v) {
      potential[v] += done[v] ? dist[v] : reached_max;
    }

    Quantity delta = -excess[target];
    NodeIndex v = target;
    while (parent[v].arc >= 0) {
      delta = std::min(delta, residual(parent[v].arc, parent[v].forward));
      const Arc& a = inst.arc(parent[v].arc);
      v = parent[v].forward ? a.tail : a.head;
    }
    delta = std::min(delta, excess[v]);
    excess[v] -= delta;
    excess[target] += delta;
    v = target;
    while (parent[v].arc >= 0) {
      const Arc& a = inst.arc(parent[v].arc);
      if (parent[v].forward) {
        x[parent[v].arc] += delta;
        v = a.tail;
      } else {
        x[parent[v].arc] -= delta;
        v = a.head;
      }
    }
    ++stats.pushes;
  }

  // Potentials satisfy a + pi_i - pi_j >= 0 on residual arcs; the dual in the
  // p_i - p_j - a convention is their negation.
  DualVector p(n);
  for (NodeIndex v = 0; v < n; ++v) p[v] = -potential[v];
  const Price lowest = *std::min_element(p.begin(), p.end());
  for (Price& pv : p) pv -= lowest;

  stats.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return SolveResult{std::move(x), std::move(p), 1, stats};
}

}  // namespace mcfpred
