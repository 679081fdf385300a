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

#include <span>

#include "coalform/net_model.hpp"
#include "coalform/partition.hpp"

namespace coalform {

/// Weights, constraints and normalization constants of the partition score.
struct ObjectiveParams {
  double zeta = 0.5;      // trade-off between capacity and overhead, in [0, 1]
  double beta = 0.1;      // inter-cluster capacity weight
  double alpha = 2.0;     // multi-hop loss parameter, > 1
  double v_intra = 1.0;   // per-pair intra-cluster management data volume
  double v_inter = 0.2;   // per-pair inter-cluster management data volume
  int n_max = 15;         // maximum cluster size
  int d_max = 2;          // maximum cluster hop-diameter
  double chi_max = 1.0;   // capacity normalization, > 0 (per graph snapshot)
  double e_max = 1.0;     // overhead normalization, > 0
  double value_scale = 1.0;  // diagnostic multiplier on coalition values

  void validate() const;  // throws std::invalid_argument
};

/// chi_max from the graph snapshot and e_max = (v_intra + v_inter) * n * (n-1).
/// Requires n >= 2 so that e_max is positive.
ObjectiveParams derive_objective_params(ObjectiveParams base, const NetworkGraph& graph);

/// Intra-cluster cooperative capacity: sum of kappa over ordered member pairs
/// that are one-hop neighbors. Adjacent pairs take the direct edge (the unique
/// fewest-hop path), so each ordered pair contributes Rt/alpha.
double chi_intra(const Coalition& coalition, const NetworkGraph& graph, double alpha);

/// Inter-cluster cooperative capacity share of one coalition: beta times the
/// sum of kappa from this coalition's head to every other head. Summing the
/// share over all coalitions covers both directions of every head pair.
double chi_inter(const Coalition& coalition, const Partition& partition,
                 const NetworkGraph& graph, const ObjectiveParams& params);

double overhead_intra(int coalition_size, const ObjectiveParams& params);
/// Per-coalition outgoing share of the inter-cluster overhead; over M
/// coalitions the shares total v_inter * M * (M - 1).
double overhead_inter(int coalition_count, const ObjectiveParams& params);
/// E_total(S) = intra + inter share, for S inside the given partition.
double overhead(const Coalition& coalition, const Partition& partition,
                const ObjectiveParams& params);

/// Size within n_max, induced subgraph connected, hop-diameter within d_max.
bool feasible(const Coalition& coalition, const NetworkGraph& graph,
              const ObjectiveParams& params);

/// Coalition value v(S): 0 when infeasible, otherwise
/// (1-zeta) * chi_total(S)/chi_max + zeta * (e_max/M - E_total(S))/e_max,
/// times value_scale.
double coalition_value(const Coalition& coalition, const Partition& partition,
                       const NetworkGraph& graph, const ObjectiveParams& params);

/// Value of a hypothetical coalition embedded in explicit surroundings:
/// `heads` is the full post-state head list (this coalition's head included)
/// and m_count the post-state coalition count.
double coalition_value_in_context(std::span<const NodeId> members, NodeId head,
                                  std::span<const NodeId> heads, int m_count,
                                  const NetworkGraph& graph, const ObjectiveParams& params);
bool feasible_members(std::span<const NodeId> members, const NetworkGraph& graph,
                      const ObjectiveParams& params);

struct ObjectiveBreakdown {
  double chi_intra = 0.0;
  double chi_inter = 0.0;
  double e_intra = 0.0;
  double e_inter = 0.0;
  double g1 = 0.0;
};

/// Raw sums over all coalitions (feasibility does not gate the raw terms; the
/// game never moves into infeasible coalitions, so for its partitions G1 and
/// the summed coalition values coincide) and the normalized global objective
/// G1 = (1-zeta) * chi_total/chi_max + zeta * (e_max - E_total)/e_max.
ObjectiveBreakdown partition_breakdown(const Partition& partition, const NetworkGraph& graph,
                                       const ObjectiveParams& params);
double global_objective(const Partition& partition, const NetworkGraph& graph,
                        const ObjectiveParams& params);

/// Sum of coalition_value over the partition; equals G1 for feasible
/// partitions.
double value_sum(const Partition& partition, const NetworkGraph& graph,
                 const ObjectiveParams& params);

}  // namespace coalform
