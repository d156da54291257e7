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

#include <gtest/gtest.h>

#include "mcfpred/analysis.h"
#include "test_util.h"

namespace mcfpred {
namespace {

TEST(SspTest, TwoNode) {
  const SolveResult r = ssp_solve(testing::two_node());
  EXPECT_EQ(r.flow, (Flow{2}));
  EXPECT_EQ(primal_cost(testing::two_node(), r.flow), 6);
  EXPECT_EQ(r.dual_scale, 1);
}

TEST(SspTest, ForcedFlowIsReturnedUnchanged) {
  const Instance inst(3, {{0, 1, 5, 2, 2}, {1, 2, -3, 1, 1}, {0, 2, 7, 4, 4}},
                      {6, -1, -5});
  const SolveResult r = ssp_solve(inst);
  EXPECT_EQ(r.flow, (Flow{2, 1, 4}));
  EXPECT_EQ(r.stats.pushes, 0u);
}

TEST(SspTest, NegativeCycleIsSaturated) {
  const Instance inst(3, {{0, 1, -2, 0, 4}, {1, 2, -2, 0, 3}, {2, 0, 1, 0, 5}},
                      {0, 0, 0});
  const SolveResult r = ssp_solve(inst);
  EXPECT_EQ(r.flow, (Flow{3, 3, 3}));
  EXPECT_EQ(primal_cost(inst, r.flow), -9);
  EXPECT_TRUE(check_cs(inst, r.flow, r.dual));
}

TEST(SspTest, InfeasibleIsReported) {
  EXPECT_THROW(ssp_solve(Instance(2, {{0, 1, 1, 0, 1}}, {2, -2})),
               InfeasibleError);
  EXPECT_THROW(ssp_solve(Instance(2, {}, {1, 0})), UnbalancedSuppliesError);
}

TEST(SspTest, MatchesBruteForceWithExactCs) {
  for (const Instance& inst : testing::random_battery(200, 2000)) {
    const SolveResult r = ssp_solve(inst);
    ASSERT_TRUE(is_feasible_flow(inst, r.flow));
    EXPECT_TRUE(check_cs(inst, r.flow, r.dual));
    EXPECT_EQ(primal_cost(inst, r.flow), brute_force_optimum(inst).cost);
    EXPECT_EQ(*std::min_element(r.dual.begin(), r.dual.end()), 0);
    // Strong duality at the returned dual.
    EXPECT_EQ(dual_cost(inst, r.dual), primal_cost(inst, r.flow));
  }
}

}  // namespace
}  // namespace mcfpred
