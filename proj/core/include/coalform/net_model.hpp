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

#include <memory>
#include <span>
#include <tuple>
#include <vector>

#include "coalform/types.hpp"

namespace coalform {

/// Free-space LOS path loss (lambda/4pi)^alpha_l * d^-alpha_l as a linear gain.
/// Throws std::domain_error for d <= 0 (collocated nodes have no defined loss).
double path_loss(double d_meters, const ChannelParams& ch);

/// Symmetric n*n matrix of exponential(1) channel gains, row-major.
std::vector<double> make_fading_matrix(int n, uint64_t seed);

/// SINR of the directed link i -> j over the full node set. When interference
/// is enabled every other transmitter k (k != i and k != j; the receiver
/// cannot interfere with itself, its self-distance is zero) contributes
/// regardless of communication range. The interference sum runs in ascending
/// k order so results are reproducible bit for bit.
double sinr(NodeId i, NodeId j, const std::vector<Node>& nodes, const ChannelParams& ch,
            const std::vector<double>* fading = nullptr);

/// Shannon rate W * log2(1 + sinr), bits/s.
double shannon_rate(double sinr_linear, double bandwidth_hz);

/// Weighted communication graph over a node snapshot. Edges are symmetric:
/// (i, j) exists iff d_ij <= min(range_i, range_j). Per-directed-edge rates
/// Rt and lazily cached per-source shortest-path rows (fewest hops, then
/// maximum bottleneck rate) back the multi-hop capacity kappa.
///
/// The kappa cache fills lazily and is not synchronized: fill it from one
/// thread, or share only a fully warmed graph between readers.
class NetworkGraph {
 public:
  NetworkGraph() = default;
  NetworkGraph(NetworkGraph&&) = default;
  NetworkGraph& operator=(NetworkGraph&&) = default;
  // Copies start with a cold kappa cache; entries always equal a fresh
  // recomputation, so nothing observable changes.
  NetworkGraph(const NetworkGraph& other);
  NetworkGraph& operator=(const NetworkGraph& other);

  /// Builds geometry, edges and rates from a node snapshot. Throws
  /// std::domain_error if two nodes coincide and std::invalid_argument if
  /// node ids are not dense in [0, N).
  static NetworkGraph build(const std::vector<Node>& nodes, const ChannelParams& ch,
                            uint64_t fading_seed = 0);

  /// Test/tooling constructor from explicit per-direction rates:
  /// (i, j, rt_ij, rt_ji).
  static NetworkGraph from_rates(int n,
                                 const std::vector<std::tuple<NodeId, NodeId, double, double>>& edges);

  int size() const { return n_; }
  int undirected_edge_count() const { return edge_count_; }
  bool has_edge(NodeId i, NodeId j) const;
  std::span<const NodeId> neighbors(NodeId i) const;

  /// Rt_{i,j}; throws std::out_of_range when edge (i, j) does not exist.
  double rate(NodeId i, NodeId j) const;

  /// Multi-hop capacity: bottleneck rate of the fewest-hop path from i to j,
  /// divided by alpha * hop count. Ties between fewest-hop paths resolve to
  /// the maximum bottleneck (the value depends on nothing further). Returns 0
  /// when i == j or the pair is disconnected. Requires alpha > 1.
  double kappa(NodeId i, NodeId j, double alpha) const;

  /// The path realizing kappa(i, j): fewest hops, then maximum bottleneck,
  /// then lexicographically smallest node-id sequence. Empty when i == j or
  /// disconnected.
  std::vector<NodeId> shortest_path(NodeId i, NodeId j) const;

  void invalidate_kappa_cache() const;

 private:
  struct PathRow {
    std::vector<int> hops;           // -1 when unreachable
    std::vector<double> bottleneck;  // min directed rate along the best path
  };

  const PathRow& row(NodeId source) const;
  PathRow compute_row(NodeId source, bool reverse) const;

  int n_ = 0;
  int edge_count_ = 0;
  std::vector<std::vector<NodeId>> adj_;  // sorted neighbor lists
  std::vector<double> rt_;                // n*n, 0 where no edge
  std::vector<uint8_t> edge_;             // n*n adjacency flags
  mutable std::vector<std::unique_ptr<PathRow>> rows_;  // lazy kappa cache
};

/// Normalization constant for the capacity half of the objective: the sum of
/// Rt/alpha over all ordered edges of the frozen graph. Edgeless graphs get
/// 1.0 so the normalized capacity term is an exact zero instead of 0/0; any
/// positive constant preserves the argmax.
double compute_chi_max(const NetworkGraph& graph, double alpha);

}  // namespace coalform
