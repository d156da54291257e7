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

#include "mcfpred/eps_relaxation.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace mcfpred {
namespace {

// Node iteration with a hook fired when a push turns a neighbor's surplus
// positive; run() uses it to feed its FIFO queue.
template <typename OnActivate>
void iterate_node(const Instance& inst, const std::vector<Cost>& costs,
                  Cost eps, EngineState& s, NodeIndex v,
                  OnActivate&& on_activate, const auto& check_budget) {
  if (s.g[v] <= 0) {
    throw std::logic_error("node iteration on node " + std::to_string(v) +
                           " without positive surplus");
  }
  ++s.stats.node_iterations;
  const auto incident = inst.incident(v);
  std::size_t& cur = s.cursor[v];
  while (true) {
    for (; cur < incident.size(); ++cur) {
      const IncidentArc ia = incident[cur];
      const Arc& a = inst.arc(ia.arc);
      Quantity& x = s.x[ia.arc];
      NodeIndex j;
      Quantity delta;
      if (ia.forward) {
        j = a.head;
        if (x >= a.upper || s.p[v] - s.p[j] - costs[ia.arc] != eps) continue;
        delta = std::min(s.g[v], a.upper - x);
        x += delta;
      } else {
        j = a.tail;
        if (x <= a.lower || s.p[j] - s.p[v] - costs[ia.arc] != -eps) continue;
        delta = std::min(s.g[v], x - a.lower);
        x -= delta;
      }
      const bool was_inactive = s.g[j] <= 0;
      s.g[v] -= delta;
      s.g[j] += delta;
      ++s.stats.pushes;
      if (was_inactive && s.g[j] > 0) on_activate(j);
      check_budget(s);
      // The arc may still be admissible, so the cursor stays on it.
      if (s.g[v] == 0) return;
    }

    // No eps-tight residual arc is left: raise the price to the smallest
    // value that makes one tight.
    Price best = std::numeric_limits<Price>::max();
    for (const IncidentArc ia : incident) {
      const Arc& a = inst.arc(ia.arc);
      const Quantity x = s.x[ia.arc];
      if (ia.forward) {
        if (x < a.upper)
          best = std::min(best, s.p[a.head] + costs[ia.arc] + eps);
      } else {
        if (x > a.lower)
          best = std::min(best, s.p[a.tail] - costs[ia.arc] + eps);
      }
    }
    if (best == std::numeric_limits<Price>::max()) {
      throw InfeasibleError("node " + std::to_string(v) +
                            " has positive surplus and no residual arc");
    }
    if (best > s.price_ceiling) {
      throw InfeasibleError("price of node " + std::to_string(v) +
                            " exceeds the feasibility ceiling");
    }
    s.p[v] = best;
    ++s.stats.price_rises;
    cur = 0;
    check_budget(s);
  }
}

}  // namespace

EpsRelaxation::EpsRelaxation(const Instance& inst, EngineConfig cfg)
    : EpsRelaxation(inst, inst.costs(), cfg) {}

EpsRelaxation::EpsRelaxation(const Instance& inst, std::vector<Cost> costs,
                             EngineConfig cfg)
    : inst_(&inst), costs_(std::move(costs)), cfg_(cfg) {
  if (cfg_.eps < 1) throw std::invalid_argument("eps must be at least 1");
  if (costs_.size() != static_cast<std::size_t>(inst.arc_count())) {
    throw std::invalid_argument("cost vector length differs from arc count");
  }
}

EngineState EpsRelaxation::init_state(DualVector p0) const {
  const Instance& inst = *inst_;
  if (p0.size() != static_cast<std::size_t>(inst.node_count())) {
    throw std::invalid_argument("initial dual length differs from node count");
  }
  EngineState s;
  s.p = std::move(p0);
  s.x.resize(inst.arc_count());
  for (ArcIndex e = 0; e < inst.arc_count(); ++e) {
    const Arc& a = inst.arc(e);
    s.x[e] = s.p[a.tail] - s.p[a.head] - costs_[e] > 0 ? a.upper : a.lower;
  }
  s.g = surplus(inst, s.x);
  s.cursor.assign(inst.node_count(), 0);
  if (cfg_.price_ceiling) {
    s.price_ceiling = *cfg_.price_ceiling;
  } else {
    Cost max_cost = 0;
    for (Cost c : costs_) max_cost = std::max<Cost>(max_cost, c < 0 ? -c : c);
    const Price top = *std::max_element(s.p.begin(), s.p.end());
    s.price_ceiling =
        top + static_cast<Price>(inst.node_count()) * (cfg_.eps + 2 * max_cost);
  }
  return s;
}

void EpsRelaxation::check_budget(const EngineState& state) const {
  if (cfg_.op_budget && state.stats.operations() > *cfg_.op_budget) {
    throw IterationBudgetExceededError("operation budget of " +
                                       std::to_string(*cfg_.op_budget) +
                                       " exhausted");
  }
}

void EpsRelaxation::node_iteration(EngineState& state, NodeIndex v) const {
  iterate_node(
      *inst_, costs_, cfg_.eps, state, v, [](NodeIndex) {},
      [this](const EngineState& s) { check_budget(s); });
}

EngineState EpsRelaxation::run(DualVector p0,
                               const IterationObserver& observer) const {
  feasibility_precheck(*inst_);
  const auto start = std::chrono::steady_clock::now();
  EngineState s = init_state(std::move(p0));
  if (observer) observer(s);

  std::deque<NodeIndex> queue;
  for (NodeIndex v = 0; v < inst_->node_count(); ++v) {
    if (s.g[v] > 0) queue.push_back(v);
  }
  const auto budget = [this](const EngineState& st) { check_budget(st); };
  while (!queue.empty()) {
    const NodeIndex v = queue.front();
    queue.pop_front();
    if (s.g[v] <= 0) continue;
    iterate_node(
        *inst_, costs_, cfg_.eps, s, v,
        [&queue](NodeIndex j) { queue.push_back(j); }, budget);
    if (observer) observer(s);
  }
  s.stats.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return s;
}

}  // namespace mcfpred
