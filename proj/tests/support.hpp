/*
Copyright 2026 coalform contributors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "coalform/baselines.hpp"
#include "coalform/game.hpp"
#include "coalform/objective.hpp"
#include "coalform/oracle.hpp"
#include "coalform/rng.hpp"
#include "coalform/scenario.hpp"

namespace coalform::test {

/// Independent kappa oracle: enumerates every simple path from i to j and
/// applies the fewest-hops-then-max-bottleneck rule directly.
inline double brute_force_kappa(const NetworkGraph& g, NodeId i, NodeId j, double alpha) {
  if (i == j) return 0.0;
  int best_hops = std::numeric_limits<int>::max();
  double best_bottleneck = 0.0;
  std::vector<NodeId> path{i};
  std::vector<uint8_t> used(g.size(), 0);
  used[i] = 1;
  auto dfs = [&](auto&& self, NodeId u, double bottleneck, int hops) -> void {
    if (u == j) {
      if (hops < best_hops || (hops == best_hops && bottleneck > best_bottleneck)) {
        best_hops = hops;
        best_bottleneck = bottleneck;
      }
      return;
    }
    if (hops >= best_hops) return;
    for (NodeId v : g.neighbors(u)) {
      if (used[v]) continue;
      used[v] = 1;
      self(self, v, std::min(bottleneck, g.rate(u, v)), hops + 1);
      used[v] = 0;
    }
  };
  dfs(dfs, i, std::numeric_limits<double>::infinity(), 0);
  if (best_hops == std::numeric_limits<int>::max()) return 0.0;
  return best_bottleneck / (alpha * best_hops);
}

/// Random scenario sized so the geometric graph is interesting at small n.
inline std::vector<Node> dense_scenario(int n, double area, uint64_t seed) {
  ScenarioParams sp;
  sp.n = n;
  sp.area_l = area;
  return generate_scenario(sp, seed);
}

struct Instance {
  std::vector<Node> nodes;
  NetworkGraph graph;
  ObjectiveParams params;
};

inline Instance make_instance(int n, double area, uint64_t seed,
                              ObjectiveParams base = ObjectiveParams{}) {
  Instance inst;
  inst.nodes = dense_scenario(n, area, seed);
  inst.graph = NetworkGraph::build(inst.nodes, ChannelParams{});
  inst.params = derive_objective_params(base, inst.graph);
  return inst;
}

/// Random feasible partition: grows clusters over unassigned neighbors while
/// the feasibility predicate holds; every node ends up covered. Heads are
/// random members.
inline Partition random_feasible_partition(const NetworkGraph& g, const ObjectiveParams& params,
                                           Rng& rng) {
  const int n = g.size();
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<uint8_t> assigned(n, 0);
  std::vector<Coalition> cs;
  for (NodeId root : order) {
    if (assigned[root]) continue;
    assigned[root] = 1;
    std::vector<NodeId> members{root};
    const int target = 1 + rng.uniform_int(params.n_max);
    bool growing = true;
    while (static_cast<int>(members.size()) < target && growing) {
      growing = false;
      std::vector<NodeId> frontier;
      for (NodeId m : members) {
        for (NodeId v : g.neighbors(m)) {
          if (!assigned[v]) frontier.push_back(v);
        }
      }
      std::sort(frontier.begin(), frontier.end());
      frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
      rng.shuffle(frontier);
      for (NodeId cand : frontier) {
        std::vector<NodeId> extended = members;
        extended.insert(std::lower_bound(extended.begin(), extended.end(), cand), cand);
        if (feasible_members(extended, g, params)) {
          members = std::move(extended);
          assigned[cand] = 1;
          growing = true;
          break;
        }
      }
    }
    Coalition c;
    c.members = members;
    c.head = members[rng.uniform_int(static_cast<int>(members.size()))];
    std::sort(c.members.begin(), c.members.end());
    cs.push_back(std::move(c));
  }
  return Partition(g.size(), std::move(cs));
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace coalform::test
