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

// Successive shortest path baseline with Dijkstra on reduced costs.

#ifndef MCFPRED_SSP_H_
#define MCFPRED_SSP_H_

#include "mcfpred/core.h"

namespace mcfpred {

// Returns an optimal flow and an exact-CS dual on the original cost grid
// (dual_scale = 1), shifted so its minimum is zero. stats.pushes counts
// augmentations and stats.node_iterations counts Dijkstra node scans.
// Throws UnbalancedSuppliesError or InfeasibleError.
SolveResult ssp_solve(const Instance& inst);

}  // namespace mcfpred

#endif  // MCFPRED_SSP_H_
