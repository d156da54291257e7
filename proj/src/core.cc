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

#include "mcfpred/core.h"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace mcfpred {
namespace {

constexpr __int128 kInt64Max = std::numeric_limits<std::int64_t>::max();

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in objective accumulation");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in objective accumulation");
  }
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in objective accumulation");
  }
  return r;
}

}  // namespace

UnbalancedSuppliesError::UnbalancedSuppliesError(std::int64_t total)
    : Error("unbalanced supplies: sum of supplies is " + std::to_string(total)),
      total_(total) {}

Instance::Instance(NodeIndex node_count, std::vector<Arc> arcs,
                   std::vector<Quantity> supplies)
    : node_count_(node_count),
      arcs_(std::move(arcs)),
      supplies_(std::move(supplies)) {
  if (node_count_ < 1) {
    throw InvalidInstanceError("instance must have at least one node");
  }
  if (supplies_.size() != static_cast<std::size_t>(node_count_)) {
    throw InvalidInstanceError("supply vector length differs from node count");
  }
  if (arcs_.size() >
      static_cast<std::size_t>(std::numeric_limits<ArcIndex>::max())) {
    throw CapacityError("too many arcs");
  }
  __int128 total_capacity = 0;
  __int128 total_supply = 0;
  for (std::size_t e = 0; e < arcs_.size(); ++e) {
    const Arc& a = arcs_[e];
    if (a.tail < 0 || a.tail >= node_count_ || a.head < 0 ||
        a.head >= node_count_) {
      throw InvalidInstanceError("arc " + std::to_string(e) +
                                 " has an endpoint out of range");
    }
    if (a.tail == a.head) {
      throw InvalidInstanceError("arc " + std::to_string(e) +
                                 " is a self-loop");
    }
    if (a.lower < 0 || a.lower > a.upper) {
      throw InvalidInstanceError("arc " + std::to_string(e) +
                                 " violates 0 <= lower <= upper");
    }
    if (a.cost == std::numeric_limits<Cost>::min()) {
      throw CapacityError("arc cost out of range");
    }
    max_cost_ = std::max<Cost>(max_cost_, std::llabs(a.cost));
    total_capacity += a.upper;
  }
  for (Quantity s : supplies_) {
    total_supply += s < 0 ? -static_cast<__int128>(s) : s;
  }

  // Scaled costs reach (n+1)C and prices stay within a few multiples of
  // n(n+1)C; keep everything a comfortable factor below the int64 range.
  const __int128 n = node_count_;
  const __int128 scaled_cost = (n + 1) * static_cast<__int128>(max_cost_);
  if (16 * n * scaled_cost > kInt64Max) {
    throw CapacityError("(n+1)*C*n exceeds the 64-bit price range");
  }
  if (total_capacity + total_supply > kInt64Max / 4 ||
      total_capacity * std::max<__int128>(scaled_cost, 1) > kInt64Max / 2) {
    throw CapacityError("capacity total times (n+1)*C exceeds 64 bits");
  }

  offsets_.assign(node_count_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++offsets_[a.tail + 1];
    ++offsets_[a.head + 1];
  }
  for (NodeIndex v = 0; v < node_count_; ++v) offsets_[v + 1] += offsets_[v];
  incidence_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (ArcIndex e = 0; e < arc_count(); ++e) {
    incidence_[fill[arcs_[e].tail]++] = {e, true};
    incidence_[fill[arcs_[e].head]++] = {e, false};
  }
}

std::vector<Cost> Instance::costs() const {
  std::vector<Cost> out;
  out.reserve(arcs_.size());
  for (const Arc& a : arcs_) out.push_back(a.cost);
  return out;
}

SolveStats& SolveStats::operator+=(const SolveStats& other) {
  pushes += other.pushes;
  price_rises += other.price_rises;
  node_iterations += other.node_iterations;
  scaling_phases += other.scaling_phases;
  wall_time += other.wall_time;
  return *this;
}

std::int64_t primal_cost(std::span<const Cost> costs,
                         std::span<const Quantity> x) {
  if (costs.size() != x.size()) {
    throw std::invalid_argument("flow length differs from arc count");
  }
  std::int64_t total = 0;
  for (std::size_t e = 0; e < x.size(); ++e) {
    total = checked_add(total, checked_mul(costs[e], x[e]));
  }
  return total;
}

std::int64_t primal_cost(const Instance& inst, std::span<const Quantity> x) {
  const std::vector<Cost> costs = inst.costs();
  return primal_cost(costs, x);
}

std::int64_t dual_cost(const Instance& inst, std::span<const Price> p) {
  if (p.size() != static_cast<std::size_t>(inst.node_count())) {
    throw std::invalid_argument("dual length differs from node count");
  }
  std::int64_t total = 0;
  for (const Arc& a : inst.arcs()) {
    const std::int64_t gap =
        checked_add(a.cost, checked_sub(p[a.head], p[a.tail]));
    const Quantity bound = gap >= 0 ? a.lower : a.upper;
    total = checked_add(total, checked_mul(gap, bound));
  }
  for (NodeIndex v = 0; v < inst.node_count(); ++v) {
    total = checked_add(total, checked_mul(inst.supply(v), p[v]));
  }
  return total;
}

SurplusVector surplus(const Instance& inst, std::span<const Quantity> x) {
  if (x.size() != static_cast<std::size_t>(inst.arc_count())) {
    throw std::invalid_argument("flow length differs from arc count");
  }
  SurplusVector g(inst.supplies().begin(), inst.supplies().end());
  for (ArcIndex e = 0; e < inst.arc_count(); ++e) {
    g[inst.arc(e).tail] -= x[e];
    g[inst.arc(e).head] += x[e];
  }
  return g;
}

bool respects_capacities(const Instance& inst, std::span<const Quantity> x) {
  if (x.size() != static_cast<std::size_t>(inst.arc_count())) return false;
  for (ArcIndex e = 0; e < inst.arc_count(); ++e) {
    if (x[e] < inst.arc(e).lower || x[e] > inst.arc(e).upper) return false;
  }
  return true;
}

bool is_feasible_flow(const Instance& inst, std::span<const Quantity> x) {
  if (!respects_capacities(inst, x)) return false;
  for (Quantity g : surplus(inst, x)) {
    if (g != 0) return false;
  }
  return true;
}

bool check_eps_cs(const Instance& inst, std::span<const Cost> costs,
                  std::span<const Quantity> x, std::span<const Price> p,
                  Cost eps) {
  for (ArcIndex e = 0; e < inst.arc_count(); ++e) {
    const Arc& a = inst.arc(e);
    const std::int64_t reduced = p[a.tail] - p[a.head] - costs[e];
    if (x[e] < a.upper && reduced > eps) return false;
    if (x[e] > a.lower && reduced < -eps) return false;
  }
  return true;
}

bool check_eps_cs(const Instance& inst, std::span<const Quantity> x,
                  std::span<const Price> p, Cost eps) {
  const std::vector<Cost> costs = inst.costs();
  return check_eps_cs(inst, costs, x, p, eps);
}

bool check_cs(const Instance& inst, std::span<const Quantity> x,
              std::span<const Price> p) {
  return check_eps_cs(inst, x, p, 0);
}

void feasibility_precheck(const Instance& inst) {
  __int128 total = 0;
  for (Quantity s : inst.supplies()) total += s;
  if (total != 0) {
    throw UnbalancedSuppliesError(static_cast<std::int64_t>(total));
  }
}

}  // namespace mcfpred
