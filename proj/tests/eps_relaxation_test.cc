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

#include <gtest/gtest.h>

#include <stdexcept>

#include "mcfpred/analysis.h"
#include "test_util.h"

namespace mcfpred {
namespace {

std::vector<Cost> scaled_costs(const Instance& inst) {
  std::vector<Cost> out;
  for (const Arc& a : inst.arcs())
    out.push_back((inst.node_count() + 1) * a.cost);
  return out;
}

TEST(EpsRelaxationTest, InitSaturatesPositiveReducedCost) {
  const Instance inst = testing::two_node();
  const EpsRelaxation engine(inst, EngineConfig{});
  EXPECT_EQ(engine.init_state(DualVector{5, 0}).x, (Flow{2}));
  EXPECT_EQ(engine.init_state(DualVector{0, 0}).x, (Flow{0}));
}

TEST(EpsRelaxationTest, HandSimulatedNodeIteration) {
  const Instance inst(2, {{0, 1, 0, 0, 2}}, {2, -2});
  const EpsRelaxation engine(inst, EngineConfig{});
  EngineState s = engine.init_state(DualVector{0, 0});
  EXPECT_EQ(s.x, (Flow{0}));
  EXPECT_EQ(s.g, (SurplusVector{2, -2}));
  engine.node_iteration(s, 0);
  EXPECT_EQ(s.p, (DualVector{1, 0}));
  EXPECT_EQ(s.x, (Flow{2}));
  EXPECT_EQ(s.g, (SurplusVector{0, 0}));
  EXPECT_EQ(s.stats.price_rises, 1u);
  EXPECT_EQ(s.stats.pushes, 1u);
}

TEST(EpsRelaxationTest, NodeIterationRequiresPositiveSurplus) {
  const Instance inst = testing::two_node();
  const EpsRelaxation engine(inst, EngineConfig{});
  EngineState s = engine.init_state(DualVector{0, 0});
  EXPECT_THROW(engine.node_iteration(s, 1), std::logic_error);
}

TEST(EpsRelaxationTest, RejectsEpsBelowOne) {
  const Instance inst = testing::two_node();
  EXPECT_THROW(EpsRelaxation(inst, EngineConfig{.eps = 0}),
               std::invalid_argument);
}

TEST(EpsRelaxationTest, TwoNodeScaledIsOptimal) {
  const Instance inst = testing::two_node();
  const EpsRelaxation engine(inst, scaled_costs(inst), EngineConfig{});
  const EngineState s = engine.run(DualVector{0, 0});
  EXPECT_EQ(s.x, (Flow{2}));
  EXPECT_EQ(primal_cost(inst, s.x), 6);
}

TEST(EpsRelaxationTest, DiamondMatchesBruteForce) {
  const Instance inst = testing::diamond();
  const EpsRelaxation engine(inst, scaled_costs(inst), EngineConfig{});
  const EngineState s = engine.run(DualVector{0, 0, 0, 0});
  EXPECT_EQ(primal_cost(inst, s.x), 3);
  EXPECT_EQ(primal_cost(inst, s.x), brute_force_optimum(inst).cost);
}

TEST(EpsRelaxationTest, ZeroCapacityCutIsInfeasible) {
  const Instance inst(2, {{0, 1, 1, 0, 0}}, {1, -1});
  const EpsRelaxation engine(inst, EngineConfig{});
  EXPECT_THROW(engine.run(DualVector{0, 0}), InfeasibleError);
}

TEST(EpsRelaxationTest, PriceCeilingDetectsInfeasibilityWithResidualCycle) {
  // Node 0 can circulate with node 1 but nothing reaches node 2.
  const Instance inst(3, {{0, 1, 1, 0, 5}, {1, 0, 1, 0, 5}}, {1, 0, -1});
  const EpsRelaxation engine(inst, EngineConfig{});
  EXPECT_THROW(engine.run(DualVector{0, 0, 0}), InfeasibleError);
}

TEST(EpsRelaxationTest, BudgetExceeded) {
  const Instance inst = gen_random_instance(
      RandomInstanceSpec{.min_nodes = 10, .max_nodes = 12, .seed = 4});
  const EpsRelaxation engine(
      inst, scaled_costs(inst),
      EngineConfig{.eps = 1, .price_ceiling = {}, .op_budget = 1});
  EXPECT_THROW(engine.run(DualVector(inst.node_count(), 0)),
               IterationBudgetExceededError);
}

TEST(EpsRelaxationTest, EpsCsHoldsAfterEveryIteration) {
  for (const Instance& inst : testing::random_battery(100, 500)) {
    for (Cost eps : {1, 3}) {
      const std::vector<Cost> costs = scaled_costs(inst);
      const EpsRelaxation engine(inst, costs, EngineConfig{.eps = eps});
      int calls = 0;
      const EngineState s = engine.run(
          DualVector(inst.node_count(), 0), [&](const EngineState& st) {
            ++calls;
            ASSERT_TRUE(check_eps_cs(inst, costs, st.x, st.p, eps));
            ASSERT_TRUE(respects_capacities(inst, st.x));
            ASSERT_EQ(st.g, surplus(inst, st.x));
          });
      EXPECT_EQ(static_cast<std::uint64_t>(calls), s.stats.node_iterations + 1);
      EXPECT_TRUE(is_feasible_flow(inst, s.x));
    }
  }
}

TEST(EpsRelaxationTest, UnitEpsOnScaledCostsIsOptimal) {
  for (const Instance& inst : testing::random_battery(100, 700)) {
    const EpsRelaxation engine(inst, scaled_costs(inst), EngineConfig{});
    const EngineState s = engine.run(DualVector(inst.node_count(), 0));
    EXPECT_EQ(primal_cost(inst, s.x), brute_force_optimum(inst).cost);
  }
}

}  // namespace
}  // namespace mcfpred
