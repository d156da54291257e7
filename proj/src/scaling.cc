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

#include "mcfpred/scaling.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mcfpred {

ScalingSchedule::ScalingSchedule(const Instance& inst, int base)
    : inst_(&inst), base_(base), max_phase_(mcfpred::max_phase(inst, base)) {}

std::int64_t ScalingSchedule::power(int t) const {
  std::int64_t r = 1;
  for (int i = 0; i < t; ++i) r *= base_;
  return r;
}

std::vector<Cost> ScalingSchedule::costs_at(int t) const {
  const std::int64_t div = power(t);
  const std::int64_t mult = inst_->node_count() + 1;
  std::vector<Cost> out;
  out.reserve(inst_->arc_count());
  for (const Arc& a : inst_->arcs())
    out.push_back(floor_div(mult * a.cost, div));
  return out;
}

DualVector ScalingSchedule::scale_dual(std::span<const double> p, int t) const {
  const double mult = static_cast<double>(inst_->node_count() + 1);
  const double div = static_cast<double>(power(t));
  DualVector out;
  out.reserve(p.size());
  for (double v : p)
    out.push_back(static_cast<Price>(std::floor(mult * v / div)));
  return out;
}

int max_phase(const Instance& inst, int base) {
  if (base < 2) throw std::invalid_argument("scaling base must be >= 2");
  const std::int64_t target =
      static_cast<std::int64_t>(inst.node_count() + 1) * inst.max_cost();
  int t = 0;
  for (std::int64_t pw = 1; pw < target; pw *= base) ++t;
  return t;
}

double engine_error_estimate(const Instance& inst, double error) {
  return static_cast<double>(inst.node_count() + 1) * error;
}

Prediction preprocess_prediction(const Instance& inst,
                                 std::span<const double> prediction) {
  if (prediction.size() != static_cast<std::size_t>(inst.node_count())) {
    throw InvalidPredictionError(
        "prediction has " + std::to_string(prediction.size()) +
        " entries, expected " + std::to_string(inst.node_count()));
  }
  for (double v : prediction) {
    if (!std::isfinite(v)) {
      throw InvalidPredictionError("prediction has a non-finite entry");
    }
  }
  const double lowest = *std::min_element(prediction.begin(), prediction.end());
  const double cap = static_cast<double>(inst.node_count() - 1) *
                     static_cast<double>(inst.max_cost());
  Prediction out;
  out.reserve(prediction.size());
  for (double v : prediction) out.push_back(std::min(v - lowest, cap));
  return out;
}

int choose_T(const WarmStartConfig& cfg, const Instance& inst) {
  const int t_max = max_phase(inst, cfg.base);
  if (cfg.explicit_T) return std::clamp(*cfg.explicit_T, 0, t_max);
  if (!cfg.error_estimate) return t_max;
  const double estimate = *cfg.error_estimate;
  int t_hat = 0;
  // Stop at t_max: anything beyond is clipped anyway.
  double pw = cfg.base;
  while (pw <= estimate && t_hat < t_max) {
    ++t_hat;
    pw *= cfg.base;
  }
  return std::min(t_hat + std::max(cfg.t_bonus, 0), t_max);
}

SolveResult solve_warm_vanilla(const Instance& inst,
                               std::span<const double> prediction, Cost eps,
                               std::optional<std::uint64_t> op_budget) {
  feasibility_precheck(inst);
  const Prediction p = preprocess_prediction(inst, prediction);
  const ScalingSchedule schedule(inst, 2);
  const EpsRelaxation engine(
      inst, schedule.costs_at(0),
      EngineConfig{.eps = eps, .price_ceiling = {}, .op_budget = op_budget});
  EngineState s = engine.run(schedule.scale_dual(p, 0));
  return SolveResult{std::move(s.x), std::move(s.p), inst.node_count() + 1,
                     s.stats};
}

SolveResult solve_warm_scaled(const Instance& inst,
                              std::span<const double> prediction,
                              const WarmStartConfig& cfg,
                              const PhaseObserver& observer) {
  feasibility_precheck(inst);
  const Prediction p_hat = preprocess_prediction(inst, prediction);
  const ScalingSchedule schedule(inst, cfg.base);
  const int T = choose_T(cfg, inst);

  DualVector p = schedule.scale_dual(p_hat, T);
  Flow x;
  SolveStats total;
  EngineConfig engine_cfg{
      .eps = 1, .price_ceiling = {}, .op_budget = cfg.op_budget};
  const auto run_phase = [&](int t, DualVector start) {
    const std::vector<Cost> costs = schedule.costs_at(t);
    if (observer) observer(PhaseStart{t, costs, start, x});
    if (cfg.op_budget) {
      engine_cfg.op_budget =
          *cfg.op_budget - std::min(*cfg.op_budget, total.operations());
    }
    const EpsRelaxation engine(inst, costs, engine_cfg);
    EngineState s = engine.run(std::move(start));
    total += s.stats;
    x = std::move(s.x);
    p = std::move(s.p);
  };

  if (T == 0) {
    run_phase(0, p);
  } else {
    for (int t = T - 1; t >= 0; --t) {
      DualVector start(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) start[i] = cfg.base * p[i];
      run_phase(t, std::move(start));
    }
  }
  total.scaling_phases = static_cast<std::uint64_t>(T);
  return SolveResult{std::move(x), std::move(p), inst.node_count() + 1, total};
}

SolveResult solve_cold(const Instance& inst, const WarmStartConfig& cfg) {
  WarmStartConfig cold = cfg;
  cold.error_estimate.reset();
  cold.explicit_T = max_phase(inst, cfg.base);
  const std::vector<double> zeros(inst.node_count(), 0.0);
  return solve_warm_scaled(inst, zeros, cold);
}

}  // namespace mcfpred
