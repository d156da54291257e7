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

// Small-instance oracles: exhaustive optimum, residual path lengths and the
// dual box witness. Everything here is exponential somewhere and guarded.
//
// beta(p), the minimum of D(p, x) over all feasible flows x, is not computed:
// tests bound it through D(p, x*) for an optimal x*.

#ifndef MCFPRED_ANALYSIS_H_
#define MCFPRED_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mcfpred/core.h"

namespace mcfpred {

class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

class OracleAssertionError : public Error {
 public:
  using Error::Error;
};

// A path in G that may use arcs in either orientation. steps[k] joins
// nodes[k] to nodes[k+1]; a forward step traverses its arc tail to head.
struct ResidualPath {
  std::vector<NodeIndex> nodes;
  std::vector<IncidentArc> steps;

  NodeIndex start() const { return nodes.front(); }
  NodeIndex end() const { return nodes.back(); }
};

// Structural validity: consistent steps and no repeated node.
bool is_simple_path(const Instance& inst, const ResidualPath& path);
// Forward steps below capacity and backward steps above the lower bound.
bool is_unblocked(const Instance& inst, const ResidualPath& path,
                  std::span<const Quantity> x);

// d_H(p) = max{0, p_s - p_t - sum_{H+} a + sum_{H-} a}.
std::int64_t reduced_cost_length(const Instance& inst, std::span<const Price> p,
                                 const ResidualPath& path);
// The same quantity accumulated edge by edge from reduced costs.
std::int64_t reduced_cost_length_edgewise(const Instance& inst,
                                          std::span<const Price> p,
                                          const ResidualPath& path);

struct LongestPathResult {
  std::int64_t length = 0;
  // A maximizing path; a single node when D = 0.
  ResidualPath path;
};

// D(p, x): the maximum of d_H(p) over simple unblocked paths w.r.t. x.
// Exhaustive over simple paths by a subset dynamic program.
// Throws InstanceTooLargeError when n > max_nodes.
LongestPathResult max_unblocked_path_length(const Instance& inst,
                                            std::span<const Price> p,
                                            std::span<const Quantity> x,
                                            int max_nodes = 12);

struct BruteForceResult {
  std::int64_t cost = 0;
  Flow flow;
};

// Exact optimum by exhaustive dynamic programming over all integer
// capacity-respecting flows, processed arc by arc with the partial node
// balances as state. Throws InfeasibleError when no feasible flow exists and
// InstanceTooLargeError when more than max_states states are generated.
BruteForceResult brute_force_optimum(const Instance& inst,
                                     std::size_t max_states = 4'000'000);

struct BoxWitness {
  DualVector dual;
  Flow flow;
  int rounds = 0;
};

// Lowers the upper side of every price gap wider than C until the dual lies
// in [0, (n-1)C]. Each lowering keeps exact CS with x. Returns the number of
// lowering rounds; throws OracleAssertionError if the loop does not settle.
int lower_into_dual_box(const Instance& inst, std::span<const Quantity> x,
                        DualVector& p);

// An optimal dual in [0, (n-1)C] paired with an optimal flow, checked for
// exact CS. Throws OracleAssertionError when the check fails.
BoxWitness dual_box_witness(const Instance& inst);

}  // namespace mcfpred

#endif  // MCFPRED_ANALYSIS_H_
