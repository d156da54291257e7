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

// Prediction preprocessing, the vanilla warm start and warm-started cost
// scaling on top of the fixed-epsilon engine.

#ifndef MCFPRED_SCALING_H_
#define MCFPRED_SCALING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mcfpred/core.h"
#include "mcfpred/eps_relaxation.h"

namespace mcfpred {

// Scaled cost grid a^(t) = floor((n+1) a / c^t), t = 0 .. max_phase().
class ScalingSchedule {
 public:
  ScalingSchedule(const Instance& inst, int base);
  ScalingSchedule(Instance&&, int) = delete;

  int base() const { return base_; }
  // T_max: the smallest T with c^T >= (n+1) C.
  int max_phase() const { return max_phase_; }
  std::int64_t power(int t) const;
  std::vector<Cost> costs_at(int t) const;
  // floor((n+1) p / c^t) componentwise.
  DualVector scale_dual(std::span<const double> p, int t) const;

 private:
  const Instance* inst_;
  int base_;
  int max_phase_;
};

struct WarmStartConfig {
  // Estimate of the infinity-norm prediction error on the engine's dual
  // grid, i.e. (n+1) times the error in original cost units; see
  // engine_error_estimate.
  std::optional<double> error_estimate;
  std::optional<int> explicit_T;
  int t_bonus = 2;
  int base = 2;
  std::optional<std::uint64_t> op_budget;
};

// Start of one scaling phase: the phase's costs, its starting dual c*p^(t+1)
// and the flow carried out of the previous phase (empty for the first one).
struct PhaseStart {
  int t;
  const std::vector<Cost>& costs;
  const DualVector& start_dual;
  const Flow& previous_flow;
};
using PhaseObserver = std::function<void(const PhaseStart&)>;

// Shifts the prediction so its minimum is 0, then clips it at (n-1)C.
// Throws InvalidPredictionError on a wrong length or a non-finite entry.
Prediction preprocess_prediction(const Instance& inst,
                                 std::span<const double> prediction);

int max_phase(const Instance& inst, int base);

// Converts an error in original cost units to the engine's dual grid.
double engine_error_estimate(const Instance& inst, double error);

// Explicit T wins (clipped to [0, T_max]); otherwise T = min(T_hat + bonus,
// T_max) with T_hat the largest t such that c^t <= estimate (0 when the
// estimate is below c); no estimate at all selects T_max.
int choose_T(const WarmStartConfig& cfg, const Instance& inst);

// Runs the engine once on (n+1)-scaled costs from floor((n+1) p_hat).
SolveResult solve_warm_vanilla(const Instance& inst,
                               std::span<const double> prediction, Cost eps = 1,
                               std::optional<std::uint64_t> op_budget = {});

// Warm-started cost scaling. For T = 0 the single run at t = 0 is the final
// refinement that produces the flow for p^(0).
SolveResult solve_warm_scaled(const Instance& inst,
                              std::span<const double> prediction,
                              const WarmStartConfig& cfg,
                              const PhaseObserver& observer = nullptr);

// Classic cost scaling from the zero dual over the full schedule.
SolveResult solve_cold(const Instance& inst, const WarmStartConfig& cfg = {});

}  // namespace mcfpred

#endif  // MCFPRED_SCALING_H_
