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

#include "coalform/objective.hpp"

#include <algorithm>
#include <stdexcept>

namespace coalform {

void ObjectiveParams::validate() const {
  if (zeta < 0.0 || zeta > 1.0) throw std::invalid_argument("objective: zeta must lie in [0, 1]");
  if (beta < 0.0) throw std::invalid_argument("objective: beta must be non-negative");
  if (alpha <= 1.0) throw std::invalid_argument("objective: alpha must exceed 1");
  if (v_intra < 0.0 || v_inter < 0.0)
    throw std::invalid_argument("objective: data volumes must be non-negative");
  if (n_max < 1) throw std::invalid_argument("objective: n_max must be at least 1");
  if (d_max < 1) throw std::invalid_argument("objective: d_max must be at least 1");
  if (chi_max <= 0.0) throw std::invalid_argument("objective: chi_max must be positive");
  if (e_max <= 0.0) throw std::invalid_argument("objective: e_max must be positive");
  if (value_scale <= 0.0) throw std::invalid_argument("objective: value_scale must be positive");
}

ObjectiveParams derive_objective_params(ObjectiveParams base, const NetworkGraph& graph) {
  const int n = graph.size();
  if (n < 2) throw std::invalid_argument("objective: need at least two nodes to normalize overhead");
  base.chi_max = compute_chi_max(graph, base.alpha);
  base.e_max = (base.v_intra + base.v_inter) * n * (n - 1.0);
  base.validate();
  return base;
}

double chi_intra(const Coalition& coalition, const NetworkGraph& graph, double alpha) {
  double sum = 0.0;
  for (NodeId i : coalition.members) {
    for (NodeId j : graph.neighbors(i)) {
      if (coalition.contains(j)) sum += graph.rate(i, j) / alpha;
    }
  }
  return sum;
}

double chi_inter(const Coalition& coalition, const Partition& partition,
                 const NetworkGraph& graph, const ObjectiveParams& params) {
  double sum = 0.0;
  for (const Coalition& other : partition.coalitions()) {
    if (other.head == coalition.head) continue;
    sum += graph.kappa(coalition.head, other.head, params.alpha);
  }
  return params.beta * sum;
}

double overhead_intra(int coalition_size, const ObjectiveParams& params) {
  return params.v_intra * coalition_size * (coalition_size - 1.0);
}

double overhead_inter(int coalition_count, const ObjectiveParams& params) {
  return params.v_inter * (coalition_count - 1.0);
}

double overhead(const Coalition& coalition, const Partition& partition,
                const ObjectiveParams& params) {
  return overhead_intra(coalition.size(), params) +
         overhead_inter(partition.coalition_count(), params);
}

bool feasible_members(std::span<const NodeId> members, const NetworkGraph& graph,
                      const ObjectiveParams& params) {
  const int size = static_cast<int>(members.size());
  if (size > params.n_max) return false;
  if (size == 1) return true;

  // BFS from each member inside the induced subgraph; the coalition must be
  // connected with hop-diameter within d_max.
  std::vector<int> dist(size);
  std::vector<NodeId> queue;
  for (int s = 0; s < size; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.assign(1, members[s]);
    size_t qi = 0;
    int reached = 1;
    while (qi < queue.size()) {
      const NodeId u = queue[qi++];
      const auto u_it = std::lower_bound(members.begin(), members.end(), u);
      const int ui = static_cast<int>(u_it - members.begin());
      for (NodeId v : graph.neighbors(u)) {
        const auto it = std::lower_bound(members.begin(), members.end(), v);
        if (it == members.end() || *it != v) continue;
        const int vi = static_cast<int>(it - members.begin());
        if (dist[vi] >= 0) continue;
        dist[vi] = dist[ui] + 1;
        if (dist[vi] > params.d_max) return false;
        queue.push_back(v);
        ++reached;
      }
    }
    if (reached != size) return false;
  }
  return true;
}

bool feasible(const Coalition& coalition, const NetworkGraph& graph,
              const ObjectiveParams& params) {
  return feasible_members(coalition.members, graph, params);
}

double coalition_value_in_context(std::span<const NodeId> members, NodeId head,
                                  std::span<const NodeId> heads, int m_count,
                                  const NetworkGraph& graph, const ObjectiveParams& params) {
  if (!feasible_members(members, graph, params)) return 0.0;

  double chi = 0.0;
  for (NodeId i : members) {
    for (NodeId j : graph.neighbors(i)) {
      if (std::binary_search(members.begin(), members.end(), j))
        chi += graph.rate(i, j) / params.alpha;
    }
  }
  double inter = 0.0;
  for (NodeId other : heads) {
    if (other == head) continue;
    inter += graph.kappa(head, other, params.alpha);
  }
  chi += params.beta * inter;

  const double e_total = overhead_intra(static_cast<int>(members.size()), params) +
                         overhead_inter(m_count, params);
  const double value = (1.0 - params.zeta) * chi / params.chi_max +
                       params.zeta * (params.e_max / m_count - e_total) / params.e_max;
  return params.value_scale * value;
}

double coalition_value(const Coalition& coalition, const Partition& partition,
                       const NetworkGraph& graph, const ObjectiveParams& params) {
  const std::vector<NodeId> heads = partition.heads();
  return coalition_value_in_context(coalition.members, coalition.head, heads,
                                    partition.coalition_count(), graph, params);
}

ObjectiveBreakdown partition_breakdown(const Partition& partition, const NetworkGraph& graph,
                                       const ObjectiveParams& params) {
  ObjectiveBreakdown b;
  const int m = partition.coalition_count();
  for (const Coalition& c : partition.coalitions()) {
    b.chi_intra += chi_intra(c, graph, params.alpha);
    b.chi_inter += chi_inter(c, partition, graph, params);
    b.e_intra += overhead_intra(c.size(), params);
    b.e_inter += overhead_inter(m, params);
  }
  const double chi_total = b.chi_intra + b.chi_inter;
  const double e_total = b.e_intra + b.e_inter;
  b.g1 = (1.0 - params.zeta) * chi_total / params.chi_max +
         params.zeta * (params.e_max - e_total) / params.e_max;
  return b;
}

double global_objective(const Partition& partition, const NetworkGraph& graph,
                        const ObjectiveParams& params) {
  return partition_breakdown(partition, graph, params).g1;
}

double value_sum(const Partition& partition, const NetworkGraph& graph,
                 const ObjectiveParams& params) {
  double sum = 0.0;
  for (const Coalition& c : partition.coalitions())
    sum += coalition_value(c, partition, graph, params);
  return sum;
}

}  // namespace coalform
