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

#include "mcfpred/analysis.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#include "mcfpred/ssp.h"

namespace mcfpred {
namespace {

NodeIndex other_end(const Arc& a, bool forward) {
  return forward ? a.head : a.tail;
}

// Reduced cost contribution of traversing one step of a path.
std::int64_t step_reduced_cost(const Instance& inst, std::span<const Price> p,
                               const IncidentArc& step) {
  const Arc& a = inst.arc(step.arc);
  if (step.forward) return p[a.tail] - p[a.head] - a.cost;
  return -(p[a.tail] - p[a.head] - a.cost);
}

bool step_unblocked(const Instance& inst, std::span<const Quantity> x,
                    const IncidentArc& step) {
  const Arc& a = inst.arc(step.arc);
  return step.forward ? x[step.arc] < a.upper : x[step.arc] > a.lower;
}

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::int64_t e : v) {
      h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

}  // namespace

bool is_simple_path(const Instance& inst, const ResidualPath& path) {
  if (path.nodes.empty() || path.steps.size() + 1 != path.nodes.size()) {
    return false;
  }
  std::vector<char> seen(inst.node_count(), 0);
  for (NodeIndex v : path.nodes) {
    if (v < 0 || v >= inst.node_count() || seen[v]) return false;
    seen[v] = 1;
  }
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const IncidentArc& s = path.steps[k];
    if (s.arc < 0 || s.arc >= inst.arc_count()) return false;
    const Arc& a = inst.arc(s.arc);
    const NodeIndex from = s.forward ? a.tail : a.head;
    if (from != path.nodes[k] || other_end(a, s.forward) != path.nodes[k + 1]) {
      return false;
    }
  }
  return true;
}

bool is_unblocked(const Instance& inst, const ResidualPath& path,
                  std::span<const Quantity> x) {
  return std::all_of(
      path.steps.begin(), path.steps.end(),
      [&](const IncidentArc& s) { return step_unblocked(inst, x, s); });
}

std::int64_t reduced_cost_length(const Instance& inst, std::span<const Price> p,
                                 const ResidualPath& path) {
  std::int64_t total = p[path.start()] - p[path.end()];
  for (const IncidentArc& s : path.steps) {
    total += s.forward ? -inst.arc(s.arc).cost : inst.arc(s.arc).cost;
  }
  return std::max<std::int64_t>(0, total);
}

std::int64_t reduced_cost_length_edgewise(const Instance& inst,
                                          std::span<const Price> p,
                                          const ResidualPath& path) {
  std::int64_t total = 0;
  for (const IncidentArc& s : path.steps) {
    total += step_reduced_cost(inst, p, s);
  }
  return std::max<std::int64_t>(0, total);
}

LongestPathResult max_unblocked_path_length(const Instance& inst,
                                            std::span<const Price> p,
                                            std::span<const Quantity> x,
                                            int max_nodes) {
  const int n = inst.node_count();
  if (n > max_nodes || n > 24) {
    throw InstanceTooLargeError("path enumeration limited to " +
                                std::to_string(max_nodes) + " nodes");
  }
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min();
  const std::size_t masks = std::size_t{1} << n;
  std::vector<std::int64_t> best(masks * n, kNone);
  struct Back {
    NodeIndex prev = -1;
    IncidentArc step{-1, true};
  };
  std::vector<Back> back(masks * n);
  for (int v = 0; v < n; ++v) best[(std::size_t{1} << v) * n + v] = 0;

  std::int64_t top = 0;
  std::size_t top_mask = 1;
  NodeIndex top_node = 0;
  for (std::size_t mask = 1; mask < masks; ++mask) {
    for (int v = 0; v < n; ++v) {
      const std::int64_t here = best[mask * n + v];
      if (here == kNone) continue;
      if (here > top) {
        top = here;
        top_mask = mask;
        top_node = v;
      }
      for (const IncidentArc& s : inst.incident(v)) {
        if (!step_unblocked(inst, x, s)) continue;
        const NodeIndex w = other_end(inst.arc(s.arc), s.forward);
        if (mask & (std::size_t{1} << w)) continue;
        const std::size_t next = (mask | (std::size_t{1} << w)) * n + w;
        const std::int64_t value = here + step_reduced_cost(inst, p, s);
        if (value > best[next]) {
          best[next] = value;
          back[next] = {static_cast<NodeIndex>(v), s};
        }
      }
    }
  }

  LongestPathResult result;
  result.length = top;
  std::size_t mask = top_mask;
  NodeIndex v = top_node;
  result.path.nodes.push_back(v);
  while (back[mask * n + v].prev >= 0) {
    const Back b = back[mask * n + v];
    result.path.steps.push_back(b.step);
    mask &= ~(std::size_t{1} << v);
    v = b.prev;
    result.path.nodes.push_back(v);
  }
  std::reverse(result.path.nodes.begin(), result.path.nodes.end());
  std::reverse(result.path.steps.begin(), result.path.steps.end());
  if (top == 0) result.path = ResidualPath{{0}, {}};
  return result;
}

BruteForceResult brute_force_optimum(const Instance& inst,
                                     std::size_t max_states) {
  const NodeIndex n = inst.node_count();
  const ArcIndex m = inst.arc_count();

  std::int64_t supply_total = 0;
  for (Quantity s : inst.supplies()) supply_total += s;
  if (supply_total != 0) throw InfeasibleError("supplies do not balance");

  // Visit nodes breadth-first so that each node's arcs are processed close
  // together and the set of partially balanced nodes stays small.
  std::vector<int> pos(n, -1);
  int next_pos = 0;
  for (NodeIndex root = 0; root < n; ++root) {
    if (pos[root] >= 0) continue;
    std::vector<NodeIndex> frontier{root};
    pos[root] = next_pos++;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      for (const IncidentArc& ia : inst.incident(frontier[k])) {
        const NodeIndex w = other_end(inst.arc(ia.arc), ia.forward);
        if (pos[w] < 0) {
          pos[w] = next_pos++;
          frontier.push_back(w);
        }
      }
    }
  }
  std::vector<ArcIndex> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](ArcIndex l, ArcIndex r) {
    const Arc& a = inst.arc(l);
    const Arc& b = inst.arc(r);
    const auto key = [&](const Arc& e) {
      return std::pair(std::max(pos[e.tail], pos[e.head]),
                       std::min(pos[e.tail], pos[e.head]));
    };
    return key(a) < key(b);
  });

  // last[v]: the step after which v has no unprocessed arc, -1 if isolated.
  std::vector<int> last(n, -1);
  for (int k = 0; k < m; ++k) {
    last[inst.arc(order[k]).tail] = k;
    last[inst.arc(order[k]).head] = k;
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if (last[v] < 0 && inst.supply(v) != 0) {
      throw InfeasibleError("isolated node " + std::to_string(v) +
                            " has nonzero supply");
    }
  }
  // rem_lo/rem_hi[v]: bounds on the net outflow v can still receive from
  // the steps not yet processed; updated as steps are consumed.
  std::vector<std::int64_t> rem_lo(n, 0), rem_hi(n, 0);
  for (const Arc& a : inst.arcs()) {
    rem_lo[a.tail] += a.lower;
    rem_hi[a.tail] += a.upper;
    rem_lo[a.head] -= a.upper;
    rem_hi[a.head] -= a.lower;
  }

  using State = std::vector<std::int64_t>;
  struct Entry {
    State balance;
    std::int64_t cost;
    std::int32_t parent;
    Quantity value;
  };
  std::vector<std::vector<Entry>> layers(m + 1);
  layers[0].push_back({State(n, 0), 0, -1, 0});
  std::size_t total_states = 1;

  for (int k = 0; k < m; ++k) {
    const ArcIndex e = order[k];
    const Arc& a = inst.arc(e);
    rem_lo[a.tail] -= a.lower;
    rem_hi[a.tail] -= a.upper;
    rem_lo[a.head] += a.upper;
    rem_hi[a.head] += a.lower;
    const auto admissible = [&](const State& bal, NodeIndex v) {
      const std::int64_t need = inst.supply(v) - bal[v];
      return need >= rem_lo[v] && need <= rem_hi[v];
    };

    std::unordered_map<State, std::int32_t, VectorHash> index;
    std::vector<Entry>& out = layers[k + 1];
    const std::vector<Entry>& in = layers[k];
    for (std::size_t i = 0; i < in.size(); ++i) {
      for (Quantity value = a.lower; value <= a.upper; ++value) {
        State bal = in[i].balance;
        bal[a.tail] += value;
        bal[a.head] -= value;
        if (!admissible(bal, a.tail) || !admissible(bal, a.head)) continue;
        const std::int64_t cost = in[i].cost + a.cost * value;
        auto [it, inserted] =
            index.try_emplace(bal, static_cast<std::int32_t>(out.size()));
        if (inserted) {
          out.push_back(
              {std::move(bal), cost, static_cast<std::int32_t>(i), value});
          if (++total_states > max_states) {
            throw InstanceTooLargeError("exhaustive search exceeded " +
                                        std::to_string(max_states) + " states");
          }
        } else if (cost < out[it->second].cost) {
          out[it->second].cost = cost;
          out[it->second].parent = static_cast<std::int32_t>(i);
          out[it->second].value = value;
        }
      }
    }
    if (out.empty()) throw InfeasibleError("no feasible flow exists");
  }

  // Every surviving state in the final layer is fully balanced.
  const std::vector<Entry>& final_layer = layers[m];
  std::size_t best = 0;
  for (std::size_t i = 1; i < final_layer.size(); ++i) {
    if (final_layer[i].cost < final_layer[best].cost) best = i;
  }
  BruteForceResult result;
  result.cost = final_layer[best].cost;
  result.flow.assign(m, 0);
  std::int32_t idx = static_cast<std::int32_t>(best);
  for (int k = m; k > 0; --k) {
    const Entry& entry = layers[k][idx];
    result.flow[order[k - 1]] = entry.value;
    idx = entry.parent;
  }
  return result;
}

int lower_into_dual_box(const Instance& inst, std::span<const Quantity> x,
                        DualVector& p) {
  const NodeIndex n = inst.node_count();
  const Cost C = inst.max_cost();
  const Price lowest = *std::min_element(p.begin(), p.end());
  for (Price& v : p) v -= lowest;

  std::vector<NodeIndex> order(n);
  int rounds = 0;
  const std::int64_t round_limit =
      static_cast<std::int64_t>(n) * std::max<Cost>(C, 1) + n;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeIndex l, NodeIndex r) { return p[l] < p[r]; });
    // Any range above (n-1)C leaves some consecutive gap wider than C; the
    // nodes above that gap form the upper side of a cut all of whose
    // crossing price differences exceed C.
    std::size_t gap = 0;
    while (gap + 1 < order.size() && p[order[gap + 1]] - p[order[gap]] <= C) {
      ++gap;
    }
    if (gap + 1 >= order.size()) break;
    if (++rounds > round_limit) {
      throw OracleAssertionError("dual box lowering did not settle");
    }
    const Price drop = p[order[gap + 1]] - p[order[gap]] - C;
    for (std::size_t k = gap + 1; k < order.size(); ++k) p[order[k]] -= drop;
  }
  if (!check_cs(inst, x, p)) {
    throw OracleAssertionError(
        "dual box lowering broke complementary slackness");
  }
  return rounds;
}

BoxWitness dual_box_witness(const Instance& inst) {
  SolveResult solved = ssp_solve(inst);
  BoxWitness w{std::move(solved.dual), std::move(solved.flow), 0};
  if (!check_cs(inst, w.flow, w.dual)) {
    throw OracleAssertionError("SSP dual is not complementary slack");
  }
  w.rounds = lower_into_dual_box(inst, w.flow, w.dual);
  const Price cap = static_cast<Price>(inst.node_count() - 1) * inst.max_cost();
  for (Price v : w.dual) {
    if (v < 0 || v > cap) {
      throw OracleAssertionError("dual witness outside [0, (n-1)C]");
    }
  }
  return w;
}

}  // namespace mcfpred
