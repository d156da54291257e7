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

// Seeded instance generators: Gaussian cost perturbation, escape-routing
// grids, random small instances and road-like grid networks. All randomness
// comes from std::mt19937_64 seeded explicitly.

#ifndef MCFPRED_GENERATORS_H_
#define MCFPRED_GENERATORS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcfpred/core.h"

namespace mcfpred {

struct PerturbSpec {
  Instance base;
  double relative_sigma = 0.1;
  std::uint64_t seed = 1;
  int samples = 10;
};

// Each arc cost a becomes round(a + N(0, (|a| * relative_sigma)^2));
// topology, capacities and supplies are copied unchanged.
std::vector<Instance> perturb_costs(const PerturbSpec& spec);

struct GridPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct EscapeSpec {
  // Cells; the lattice has (width+1) x (height+1) grid points.
  int width = 0;
  int height = 0;
  std::vector<GridPoint> pins;
  std::vector<GridPoint> obstacles;
  // Used only when `pins` is empty: that many distinct interior points.
  int random_pins = 0;
  // Used only when `obstacles` is empty: fraction of the free grid points.
  double obstacle_rate = 0.05;
  std::uint64_t seed = 1;
  // Cost of one grid step.
  Cost pitch = 1;
};

enum class NodeRoleKind { kIn, kOut, kPin, kSink };

struct NodeRole {
  NodeRoleKind kind;
  GridPoint point;  // {-1, -1} for the sink
};

struct EscapeInstance {
  Instance instance;
  std::vector<NodeRole> roles;  // indexed by node
  std::vector<GridPoint> pins;
  std::vector<GridPoint> obstacles;
};

// Grid points become (in, out) node pairs joined by a unit arc, adjacent
// free points are linked out -> in both ways, pins feed their neighbors'
// in-nodes and boundary out-nodes drain into one sink. Every arc has
// lower bound 0 and capacity 1. Throws std::invalid_argument for pins or
// obstacles off the lattice or overlapping.
EscapeInstance gen_escape(const EscapeSpec& spec);

struct EscapePath {
  GridPoint pin;
  // Grid points visited from the pin to the boundary, excluding the pin.
  std::vector<GridPoint> points;
};

// Follows unit flows from every pin to the sink. Throws Error when the flow
// does not decompose into pin-to-sink paths.
std::vector<EscapePath> extract_escape_paths(const EscapeInstance& escape,
                                             std::span<const Quantity> flow);

// "r <node_id> <in|out|pin|sink> <x> <y>" lines.
std::string write_role_map(std::span<const NodeRole> roles);
std::vector<NodeRole> parse_role_map(const std::string& text);

struct RandomInstanceSpec {
  int min_nodes = 2;
  int max_nodes = 12;
  int max_arcs = 30;
  Cost max_abs_cost = 10;
  Quantity max_lower = 2;
  Quantity max_span = 5;  // upper - lower
  // Probability of disturbing the supplies of a feasible construction.
  double disturb_probability = 0.0;
  std::uint64_t seed = 1;
};

// Random instance whose supplies come from a random capacity-respecting
// flow, so it is feasible unless the supplies get disturbed.
Instance gen_random_instance(const RandomInstanceSpec& spec);

struct RoadGridSpec {
  int rows = 32;
  int cols = 32;
  Cost min_cost = 1;
  Cost max_cost = 100;
  Quantity min_capacity = 10;
  Quantity max_capacity = 40;
  int sources = 25;
  int sinks = 25;
  Quantity max_supply = 20;
  std::uint64_t seed = 1;
};

// Grid road network with two opposite arcs per adjacent pair, random costs
// and capacities, and random source/sink nodes.
Instance gen_road_grid(const RoadGridSpec& spec);

// p + u with u componentwise uniform in [-level, level].
Prediction perturb_dual(std::span<const double> dual, double level,
                        std::uint64_t seed);

}  // namespace mcfpred

#endif  // MCFPRED_GENERATORS_H_
