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

#include "mcfpred/generators.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mcfpred {
namespace {

const char* kind_name(NodeRoleKind k) {
  switch (k) {
    case NodeRoleKind::kIn:
      return "in";
    case NodeRoleKind::kOut:
      return "out";
    case NodeRoleKind::kPin:
      return "pin";
    case NodeRoleKind::kSink:
      return "sink";
  }
  return "?";
}

template <typename T>
T uniform_int(std::mt19937_64& rng, T lo, T hi) {
  return std::uniform_int_distribution<T>(lo, hi)(rng);
}

}  // namespace

std::vector<Instance> perturb_costs(const PerturbSpec& spec) {
  if (spec.relative_sigma < 0) {
    throw std::invalid_argument("relative_sigma must be non-negative");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<Instance> out;
  out.reserve(spec.samples);
  for (int k = 0; k < spec.samples; ++k) {
    std::vector<Arc> arcs = spec.base.arcs();
    for (Arc& a : arcs) {
      const double sigma =
          std::abs(static_cast<double>(a.cost)) * spec.relative_sigma;
      if (sigma == 0.0) continue;
      std::normal_distribution<double> noise(0.0, sigma);
      a.cost = std::llround(static_cast<double>(a.cost) + noise(rng));
    }
    out.emplace_back(spec.base.node_count(), std::move(arcs),
                     spec.base.supplies());
  }
  return out;
}

EscapeInstance gen_escape(const EscapeSpec& spec) {
  const int W = spec.width, H = spec.height;
  if (W < 1 || H < 1) throw std::invalid_argument("escape grid must be >= 1x1");
  if (spec.pitch < 1) throw std::invalid_argument("pitch must be positive");
  const auto inside = [&](GridPoint g) {
    return g.x >= 0 && g.x <= W && g.y >= 0 && g.y <= H;
  };
  const auto on_boundary = [&](GridPoint g) {
    return g.x == 0 || g.y == 0 || g.x == W || g.y == H;
  };
  std::mt19937_64 rng(spec.seed);

  EscapeInstance esc{Instance(1, {}, {0}), {}, spec.pins, spec.obstacles};
  std::set<GridPoint> taken;
  for (const GridPoint& p : esc.pins) {
    if (!inside(p)) throw std::invalid_argument("pin off the grid");
    if (!taken.insert(p).second) throw std::invalid_argument("duplicate pin");
  }
  if (esc.pins.empty() && spec.random_pins > 0) {
    std::vector<GridPoint> interior;
    for (int y = 1; y < H; ++y) {
      for (int x = 1; x < W; ++x) interior.push_back({x, y});
    }
    if (spec.random_pins > static_cast<int>(interior.size())) {
      throw std::invalid_argument("more pins than interior grid points");
    }
    std::shuffle(interior.begin(), interior.end(), rng);
    interior.resize(spec.random_pins);
    std::sort(interior.begin(), interior.end(), [](GridPoint a, GridPoint b) {
      return std::pair(a.y, a.x) < std::pair(b.y, b.x);
    });
    esc.pins = interior;
    taken.insert(interior.begin(), interior.end());
  }
  std::set<GridPoint> blocked(taken);
  for (const GridPoint& o : esc.obstacles) {
    if (!inside(o)) throw std::invalid_argument("obstacle off the grid");
    if (taken.count(o)) throw std::invalid_argument("obstacle overlaps a pin");
    if (!blocked.insert(o).second) {
      throw std::invalid_argument("duplicate obstacle");
    }
  }
  if (esc.obstacles.empty() && spec.obstacle_rate > 0) {
    std::vector<GridPoint> free;
    for (int y = 0; y <= H; ++y) {
      for (int x = 0; x <= W; ++x) {
        if (!taken.count({x, y})) free.push_back({x, y});
      }
    }
    const auto count = static_cast<std::size_t>(std::llround(
        spec.obstacle_rate * static_cast<double>((W + 1) * (H + 1))));
    std::shuffle(free.begin(), free.end(), rng);
    free.resize(std::min(count, free.size()));
    std::sort(free.begin(), free.end(), [](GridPoint a, GridPoint b) {
      return std::pair(a.y, a.x) < std::pair(b.y, b.x);
    });
    esc.obstacles = free;
    blocked.insert(free.begin(), free.end());
  }

  // Routable grid points in row-major order own nodes 2k (in), 2k+1 (out).
  std::map<GridPoint, NodeIndex> slot;
  for (int y = 0; y <= H; ++y) {
    for (int x = 0; x <= W; ++x) {
      if (blocked.count({x, y})) continue;
      const NodeIndex k = static_cast<NodeIndex>(slot.size());
      slot[{x, y}] = k;
      esc.roles.push_back({NodeRoleKind::kIn, {x, y}});
      esc.roles.push_back({NodeRoleKind::kOut, {x, y}});
    }
  }
  const NodeIndex first_pin = static_cast<NodeIndex>(esc.roles.size());
  for (const GridPoint& p : esc.pins) {
    esc.roles.push_back({NodeRoleKind::kPin, p});
  }
  const NodeIndex sink = static_cast<NodeIndex>(esc.roles.size());
  esc.roles.push_back({NodeRoleKind::kSink, {-1, -1}});

  std::vector<Arc> arcs;
  const GridPoint dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& [g, k] : slot) {
    (void)g;
    arcs.push_back({2 * k, 2 * k + 1, 0, 0, 1});
  }
  for (int y = 0; y <= H; ++y) {
    for (int x = 0; x <= W; ++x) {
      const auto it = slot.find({x, y});
      if (it == slot.end()) continue;
      for (const GridPoint d : dirs) {
        const auto nb = slot.find({x + d.x, y + d.y});
        if (nb == slot.end()) continue;
        arcs.push_back({2 * it->second + 1, 2 * nb->second, spec.pitch, 0, 1});
      }
      if (on_boundary({x, y}))
        arcs.push_back({2 * it->second + 1, sink, 0, 0, 1});
    }
  }
  for (std::size_t i = 0; i < esc.pins.size(); ++i) {
    const GridPoint p = esc.pins[i];
    const NodeIndex pin = first_pin + static_cast<NodeIndex>(i);
    if (on_boundary(p)) arcs.push_back({pin, sink, 0, 0, 1});
    for (const GridPoint d : dirs) {
      const auto nb = slot.find({p.x + d.x, p.y + d.y});
      if (nb == slot.end()) continue;
      arcs.push_back({pin, 2 * nb->second, spec.pitch, 0, 1});
    }
  }
  std::vector<Quantity> supplies(esc.roles.size(), 0);
  for (std::size_t i = 0; i < esc.pins.size(); ++i) supplies[first_pin + i] = 1;
  supplies[sink] = -static_cast<Quantity>(esc.pins.size());
  esc.instance = Instance(static_cast<NodeIndex>(esc.roles.size()),
                          std::move(arcs), std::move(supplies));
  return esc;
}

std::vector<EscapePath> extract_escape_paths(const EscapeInstance& escape,
                                             std::span<const Quantity> flow) {
  const Instance& inst = escape.instance;
  std::vector<std::vector<ArcIndex>> out_flow(inst.node_count());
  for (ArcIndex e = 0; e < inst.arc_count(); ++e) {
    if (flow[e] > 0) out_flow[inst.arc(e).tail].push_back(e);
  }
  std::vector<std::size_t> used(inst.node_count(), 0);
  std::vector<EscapePath> paths;
  for (NodeIndex v = 0; v < inst.node_count(); ++v) {
    if (escape.roles[v].kind != NodeRoleKind::kPin) continue;
    EscapePath path{escape.roles[v].point, {}};
    NodeIndex cur = v;
    for (std::size_t steps = 0;; ++steps) {
      if (escape.roles[cur].kind == NodeRoleKind::kSink) break;
      if (used[cur] >= out_flow[cur].size() ||
          steps > static_cast<std::size_t>(inst.node_count())) {
        throw Error("escape flow does not reach the sink from pin node " +
                    std::to_string(v));
      }
      cur = inst.arc(out_flow[cur][used[cur]++]).head;
      if (escape.roles[cur].kind == NodeRoleKind::kIn) {
        path.points.push_back(escape.roles[cur].point);
      }
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

std::string write_role_map(std::span<const NodeRole> roles) {
  std::ostringstream out;
  for (std::size_t v = 0; v < roles.size(); ++v) {
    out << "r " << v + 1 << ' ' << kind_name(roles[v].kind) << ' '
        << roles[v].point.x << ' ' << roles[v].point.y << '\n';
  }
  return out.str();
}

std::vector<NodeRole> parse_role_map(const std::string& text) {
  std::istringstream in(text);
  std::string tag, kind;
  std::size_t id;
  int x, y;
  std::vector<NodeRole> roles;
  while (in >> tag >> id >> kind >> x >> y) {
    if (tag != "r" || id != roles.size() + 1) {
      throw Error("malformed role map entry " + std::to_string(id));
    }
    NodeRoleKind k;
    if (kind == "in") {
      k = NodeRoleKind::kIn;
    } else if (kind == "out") {
      k = NodeRoleKind::kOut;
    } else if (kind == "pin") {
      k = NodeRoleKind::kPin;
    } else if (kind == "sink") {
      k = NodeRoleKind::kSink;
    } else {
      throw Error("unknown role '" + kind + "'");
    }
    roles.push_back({k, {x, y}});
  }
  return roles;
}

Instance gen_random_instance(const RandomInstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const int n = uniform_int(rng, spec.min_nodes, spec.max_nodes);
  const int m = uniform_int(rng, std::min(n - 1, spec.max_arcs), spec.max_arcs);
  std::vector<Arc> arcs;
  arcs.reserve(m);
  std::vector<Quantity> supplies(n, 0);
  for (int e = 0; e < m; ++e) {
    const NodeIndex tail = uniform_int(rng, 0, n - 1);
    NodeIndex head = uniform_int(rng, 0, n - 2);
    if (head >= tail) ++head;
    const Cost cost = uniform_int(rng, -spec.max_abs_cost, spec.max_abs_cost);
    const Quantity lower = uniform_int<Quantity>(rng, 0, spec.max_lower);
    const Quantity upper = lower + uniform_int<Quantity>(rng, 0, spec.max_span);
    const Quantity x = uniform_int(rng, lower, upper);
    supplies[tail] += x;
    supplies[head] -= x;
    arcs.push_back({tail, head, cost, lower, upper});
  }
  if (std::bernoulli_distribution(spec.disturb_probability)(rng)) {
    const NodeIndex u = uniform_int(rng, 0, n - 1);
    NodeIndex v = uniform_int(rng, 0, n - 2);
    if (v >= u) ++v;
    const Quantity k = uniform_int<Quantity>(rng, 1, 3);
    supplies[u] += k;
    supplies[v] -= k;
  }
  return Instance(n, std::move(arcs), std::move(supplies));
}

Instance gen_road_grid(const RoadGridSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1 || spec.rows * spec.cols < 2) {
    throw std::invalid_argument("road grid needs at least two nodes");
  }
  const int n = spec.rows * spec.cols;
  if (spec.sources + spec.sinks > n) {
    throw std::invalid_argument("more terminals than grid nodes");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<Arc> arcs;
  const auto id = [&](int r, int c) { return r * spec.cols + c; };
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      const auto link = [&](NodeIndex u, NodeIndex v) {
        for (const auto& [t, h] : {std::pair(u, v), std::pair(v, u)}) {
          arcs.push_back(
              {t, h, uniform_int(rng, spec.min_cost, spec.max_cost), 0,
               uniform_int(rng, spec.min_capacity, spec.max_capacity)});
        }
      };
      if (c + 1 < spec.cols) link(id(r, c), id(r, c + 1));
      if (r + 1 < spec.rows) link(id(r, c), id(r + 1, c));
    }
  }
  std::vector<NodeIndex> nodes(n);
  for (int v = 0; v < n; ++v) nodes[v] = v;
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::vector<Quantity> supplies(n, 0);
  Quantity total = 0;
  for (int k = 0; k < spec.sources; ++k) {
    const Quantity s = uniform_int<Quantity>(rng, 1, spec.max_supply);
    supplies[nodes[k]] = s;
    total += s;
  }
  if (spec.sinks > 0) {
    for (Quantity unit = 0; unit < total; ++unit) {
      supplies[nodes[spec.sources + unit % spec.sinks]] -= 1;
    }
  }
  return Instance(n, std::move(arcs), std::move(supplies));
}

Prediction perturb_dual(std::span<const double> dual, double level,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-level, level);
  Prediction out(dual.begin(), dual.end());
  if (level <= 0) return out;
  for (double& v : out) v += noise(rng);
  return out;
}

}  // namespace mcfpred
