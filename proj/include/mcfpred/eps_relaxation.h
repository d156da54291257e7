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

// Fixed-epsilon relaxation engine: positive-surplus node iterations driven
// from a FIFO queue, starting from an arbitrary integer dual.

#ifndef MCFPRED_EPS_RELAXATION_H_
#define MCFPRED_EPS_RELAXATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mcfpred/core.h"

namespace mcfpred {

// Raised when the configured operation budget is exhausted. The engine has
// no anti-cycling rules, so the budget is what turns cycling into an error.
class IterationBudgetExceededError : public Error {
 public:
  using Error::Error;
};

struct EngineConfig {
  Cost eps = 1;
  // Upper bound on any node price. When unset it is derived from the
  // initial dual: max_i p0_i + n * (eps + 2 * max |cost|).
  std::optional<Price> price_ceiling;
  // Maximum number of pushes + price rises; unset means unlimited.
  std::optional<std::uint64_t> op_budget;
};

struct EngineState {
  Flow x;
  DualVector p;
  SurplusVector g;
  // Per-node position in Instance::incident(v).
  std::vector<std::size_t> cursor;
  Price price_ceiling = 0;
  SolveStats stats;
};

// Called with a read-only view of the state after init_state and after every
// completed node iteration.
using IterationObserver = std::function<void(const EngineState&)>;

class EpsRelaxation {
 public:
  // Runs on the instance's own costs.
  EpsRelaxation(const Instance& inst, EngineConfig cfg);
  // Runs on an explicit cost vector (e.g. scaled costs) over inst's topology.
  EpsRelaxation(const Instance& inst, std::vector<Cost> costs,
                EngineConfig cfg);
  // The engine keeps a reference to the instance.
  EpsRelaxation(Instance&&, EngineConfig) = delete;
  EpsRelaxation(Instance&&, std::vector<Cost>, EngineConfig) = delete;

  const Instance& instance() const { return *inst_; }
  const std::vector<Cost>& costs() const { return costs_; }
  const EngineConfig& config() const { return cfg_; }

  // Saturates every arc with positive reduced cost and puts every other arc
  // at its lower bound, so (x, p0) satisfies 0-CS.
  EngineState init_state(DualVector p0) const;

  // Drives g_v to zero by pushes along eps-tight residual arcs and price
  // rises. Requires g_v > 0 (throws std::logic_error otherwise). Throws
  // InfeasibleError when no residual arc leaves v or the price ceiling is
  // crossed.
  void node_iteration(EngineState& state, NodeIndex v) const;

  // Runs node iterations until every surplus is zero. The returned flow is
  // feasible and eps-CS with the returned dual.
  EngineState run(DualVector p0,
                  const IterationObserver& observer = nullptr) const;

 private:
  void check_budget(const EngineState& state) const;

  const Instance* inst_;
  std::vector<Cost> costs_;
  EngineConfig cfg_;
};

}  // namespace mcfpred

#endif  // MCFPRED_EPS_RELAXATION_H_
