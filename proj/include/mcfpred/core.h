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

#ifndef MCFPRED_CORE_H_
#define MCFPRED_CORE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcfpred {

using NodeIndex = std::int32_t;
using ArcIndex = std::int32_t;
using Cost = std::int64_t;
using Quantity = std::int64_t;
using Price = std::int64_t;

// Per-arc flow values, aligned with Instance::arcs().
using Flow = std::vector<Quantity>;
// Per-node integer prices (solver-internal duals).
using DualVector = std::vector<Price>;
// Per-node real-valued prices, e.g. an externally supplied prediction.
using Prediction = std::vector<double>;
// Per-node surplus g_i = inflow - outflow + supply.
using SurplusVector = std::vector<Quantity>;

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

// The instance is outside the magnitude range the solvers can represent.
class CapacityError : public InvalidInstanceError {
 public:
  using InvalidInstanceError::InvalidInstanceError;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class UnbalancedSuppliesError : public Error {
 public:
  explicit UnbalancedSuppliesError(std::int64_t total);
  std::int64_t total() const { return total_; }

 private:
  std::int64_t total_;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class InvalidPredictionError : public Error {
 public:
  using Error::Error;
};

struct Arc {
  NodeIndex tail = 0;
  NodeIndex head = 0;
  Cost cost = 0;
  Quantity lower = 0;
  Quantity upper = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// One entry of a node's incidence list. `forward` is true when the node is
// the tail of the arc.
struct IncidentArc {
  ArcIndex arc;
  bool forward;
};

// A linear minimum-cost flow problem. Immutable after construction, so a
// single Instance may be shared by concurrently running solves.
class Instance {
 public:
  // Throws InvalidInstanceError on a malformed instance (n < 1, an endpoint
  // out of range, a self-loop, or lower > upper) and CapacityError when the
  // magnitudes would overflow the scaled solver arithmetic.
  Instance(NodeIndex node_count, std::vector<Arc> arcs,
           std::vector<Quantity> supplies);

  NodeIndex node_count() const { return node_count_; }
  ArcIndex arc_count() const { return static_cast<ArcIndex>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcIndex a) const { return arcs_[a]; }
  const std::vector<Quantity>& supplies() const { return supplies_; }
  Quantity supply(NodeIndex v) const { return supplies_[v]; }

  // C = max |a_ij| over all arcs (0 for an arcless instance).
  Cost max_cost() const { return max_cost_; }

  // Arcs incident to v in both orientations, ordered by arc index.
  std::span<const IncidentArc> incident(NodeIndex v) const {
    return {incidence_.data() + offsets_[v],
            incidence_.data() + offsets_[v + 1]};
  }

  std::vector<Cost> costs() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.node_count_ == b.node_count_ && a.arcs_ == b.arcs_ &&
           a.supplies_ == b.supplies_;
  }

 private:
  NodeIndex node_count_;
  std::vector<Arc> arcs_;
  std::vector<Quantity> supplies_;
  Cost max_cost_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<IncidentArc> incidence_;
};

// Statistics of a solve. The operation counts are deterministic given the
// instance, initial dual and configuration; wall_time is informational.
struct SolveStats {
  std::uint64_t pushes = 0;
  std::uint64_t price_rises = 0;
  std::uint64_t node_iterations = 0;
  std::uint64_t scaling_phases = 0;
  double wall_time = 0.0;

  std::uint64_t operations() const { return pushes + price_rises; }

  SolveStats& operator+=(const SolveStats& other);
};

// Result of a full solve. `dual` is expressed on the cost grid scaled by
// `dual_scale` (n+1 for the relaxation solvers, 1 for the SSP baseline).
struct SolveResult {
  Flow flow;
  DualVector dual;
  Cost dual_scale = 1;
  SolveStats stats;
};

// floor(num / den) for den > 0, correct for negative numerators.
constexpr std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

// Sum of a_ij x_ij. Throws OverflowError instead of wrapping.
std::int64_t primal_cost(const Instance& inst, std::span<const Quantity> x);
std::int64_t primal_cost(std::span<const Cost> costs,
                         std::span<const Quantity> x);

// Dual objective sum_ij q_ij(p_i - p_j) + sum_i s_i p_i with q_ij taking its
// lower-capacity branch when a_ij + p_j - p_i >= 0 and its upper-capacity
// branch otherwise. Throws OverflowError.
std::int64_t dual_cost(const Instance& inst, std::span<const Price> p);

SurplusVector surplus(const Instance& inst, std::span<const Quantity> x);

bool respects_capacities(const Instance& inst, std::span<const Quantity> x);
// Capacity-respecting and every surplus is zero.
bool is_feasible_flow(const Instance& inst, std::span<const Quantity> x);

bool check_cs(const Instance& inst, std::span<const Quantity> x,
              std::span<const Price> p);
bool check_eps_cs(const Instance& inst, std::span<const Quantity> x,
                  std::span<const Price> p, Cost eps);
// Same predicate against an explicit (e.g. scaled) cost vector.
bool check_eps_cs(const Instance& inst, std::span<const Cost> costs,
                  std::span<const Quantity> x, std::span<const Price> p,
                  Cost eps);

// Throws UnbalancedSuppliesError unless the supplies sum to zero.
void feasibility_precheck(const Instance& inst);

}  // namespace mcfpred

#endif  // MCFPRED_CORE_H_
