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

#include "coalform/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "coalform/rng.hpp"

namespace coalform {

double path_loss(double d_meters, const ChannelParams& ch) {
  if (d_meters <= 0.0) throw std::domain_error("path_loss: distance must be positive");
  const double unit = std::pow(ch.wavelength_m / (4.0 * std::numbers::pi), ch.alpha_l);
  return unit * std::pow(d_meters, -ch.alpha_l);
}

std::vector<double> make_fading_matrix(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> h(static_cast<size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double g = rng.exponential(1.0);
      h[static_cast<size_t>(i) * n + j] = g;
      h[static_cast<size_t>(j) * n + i] = g;
    }
  }
  return h;
}

namespace {

double fading_gain(const std::vector<double>* fading, int n, NodeId a, NodeId b) {
  if (fading == nullptr) return 1.0;
  return (*fading)[static_cast<size_t>(a) * n + b];
}

}  // namespace

double sinr(NodeId i, NodeId j, const std::vector<Node>& nodes, const ChannelParams& ch,
            const std::vector<double>* fading) {
  if (i == j) throw std::invalid_argument("sinr: i and j must differ");
  const int n = static_cast<int>(nodes.size());
  const double d_ij = distance(nodes[i], nodes[j]);
  const double p_t = dbm_to_watts(ch.p_t_dbm);
  const double g0 = dbi_to_linear(ch.g0_dbi);
  const double h_ij = fading_gain(fading, n, i, j);
  const double numerator = p_t * g0 * h_ij * path_loss(d_ij, ch);
  const double noise = noise_watts(ch.n0_dbm_per_mhz, ch.bandwidth_hz);

  double interference = 0.0;
  if (ch.interference_on) {
    const double unit = std::pow(ch.wavelength_m / (4.0 * std::numbers::pi), ch.alpha_l);
    double sum = 0.0;  // sum over transmitters k != i, k != j, ascending k
    for (NodeId k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      const double d_kj = distance(nodes[k], nodes[j]);
      if (d_kj <= 0.0) throw std::domain_error("sinr: coincident nodes");
      sum += fading_gain(fading, n, k, j) * std::pow(d_kj, -ch.alpha_l);
    }
    interference = p_t * g0 * unit * sum;
  }
  return numerator / (noise + interference);
}

double shannon_rate(double sinr_linear, double bandwidth_hz) {
  return bandwidth_hz * std::log2(1.0 + sinr_linear);
}

NetworkGraph::NetworkGraph(const NetworkGraph& other)
    : n_(other.n_),
      edge_count_(other.edge_count_),
      adj_(other.adj_),
      rt_(other.rt_),
      edge_(other.edge_) {
  rows_.clear();
  rows_.resize(n_);
}

NetworkGraph& NetworkGraph::operator=(const NetworkGraph& other) {
  if (this == &other) return *this;
  n_ = other.n_;
  edge_count_ = other.edge_count_;
  adj_ = other.adj_;
  rt_ = other.rt_;
  edge_ = other.edge_;
  rows_.clear();
  rows_.resize(n_);
  return *this;
}

NetworkGraph NetworkGraph::build(const std::vector<Node>& nodes, const ChannelParams& ch,
                                 uint64_t fading_seed) {
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i) {
    if (nodes[i].id != i) throw std::invalid_argument("NetworkGraph::build: node ids must be dense in [0, N)");
  }

  NetworkGraph g;
  g.n_ = n;
  g.adj_.resize(n);
  g.rt_.assign(static_cast<size_t>(n) * n, 0.0);
  g.edge_.assign(static_cast<size_t>(n) * n, 0);
  g.rows_.resize(n);

  std::vector<double> fading;
  const std::vector<double>* fading_ptr = nullptr;
  if (ch.fading_on) {
    fading = make_fading_matrix(n, fading_seed);
    fading_ptr = &fading;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = distance(nodes[i], nodes[j]);
      if (d <= 0.0) throw std::domain_error("NetworkGraph::build: coincident nodes");
      if (d <= std::min(nodes[i].range, nodes[j].range)) {
        g.edge_[static_cast<size_t>(i) * n + j] = 1;
        g.edge_[static_cast<size_t>(j) * n + i] = 1;
        g.adj_[i].push_back(j);
        g.adj_[j].push_back(i);
        ++g.edge_count_;
      }
    }
  }
  // adj_ rows come out sorted by construction.
  for (int i = 0; i < n; ++i) {
    for (NodeId j : g.adj_[i]) {
      g.rt_[static_cast<size_t>(i) * n + j] =
          shannon_rate(sinr(i, j, nodes, ch, fading_ptr), ch.bandwidth_hz);
    }
  }
  return g;
}

NetworkGraph NetworkGraph::from_rates(
    int n, const std::vector<std::tuple<NodeId, NodeId, double, double>>& edges) {
  NetworkGraph g;
  g.n_ = n;
  g.adj_.resize(n);
  g.rt_.assign(static_cast<size_t>(n) * n, 0.0);
  g.edge_.assign(static_cast<size_t>(n) * n, 0);
  g.rows_.resize(n);
  for (const auto& [i, j, rt_ij, rt_ji] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
      throw std::invalid_argument("NetworkGraph::from_rates: bad edge endpoints");
    if (g.edge_[static_cast<size_t>(i) * n + j])
      throw std::invalid_argument("NetworkGraph::from_rates: duplicate edge");
    if (rt_ij < 0.0 || rt_ji < 0.0)
      throw std::invalid_argument("NetworkGraph::from_rates: negative rate");
    g.edge_[static_cast<size_t>(i) * n + j] = 1;
    g.edge_[static_cast<size_t>(j) * n + i] = 1;
    g.rt_[static_cast<size_t>(i) * n + j] = rt_ij;
    g.rt_[static_cast<size_t>(j) * n + i] = rt_ji;
    g.adj_[i].push_back(j);
    g.adj_[j].push_back(i);
    ++g.edge_count_;
  }
  for (auto& row : g.adj_) std::sort(row.begin(), row.end());
  return g;
}

bool NetworkGraph::has_edge(NodeId i, NodeId j) const {
  return edge_[static_cast<size_t>(i) * n_ + j] != 0;
}

std::span<const NodeId> NetworkGraph::neighbors(NodeId i) const {
  return {adj_[i].data(), adj_[i].size()};
}

double NetworkGraph::rate(NodeId i, NodeId j) const {
  if (!has_edge(i, j)) throw std::out_of_range("NetworkGraph::rate: edge does not exist");
  return rt_[static_cast<size_t>(i) * n_ + j];
}

NetworkGraph::PathRow NetworkGraph::compute_row(NodeId source, bool reverse) const {
  // BFS layering gives fewest hops; a second pass in BFS order maximizes the
  // bottleneck over fewest-hop paths. With `reverse` the row holds best paths
  // *into* `source` (directed rates still follow the travel direction).
  PathRow r;
  r.hops.assign(n_, -1);
  r.bottleneck.assign(n_, 0.0);
  std::deque<NodeId> queue;
  r.hops[source] = 0;
  r.bottleneck[source] = std::numeric_limits<double>::infinity();
  queue.push_back(source);
  std::vector<NodeId> order;
  order.reserve(n_);
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (NodeId v : adj_[u]) {
      if (r.hops[v] < 0) {
        r.hops[v] = r.hops[u] + 1;
        queue.push_back(v);
      }
    }
  }
  for (NodeId u : order) {
    if (u == source) continue;
    double best = 0.0;
    for (NodeId p : adj_[u]) {
      if (r.hops[p] != r.hops[u] - 1) continue;
      const double hop_rate = reverse ? rt_[static_cast<size_t>(u) * n_ + p]
                                      : rt_[static_cast<size_t>(p) * n_ + u];
      best = std::max(best, std::min(r.bottleneck[p], hop_rate));
    }
    r.bottleneck[u] = best;
  }
  return r;
}

const NetworkGraph::PathRow& NetworkGraph::row(NodeId source) const {
  auto& slot = rows_[source];
  if (!slot) slot = std::make_unique<PathRow>(compute_row(source, false));
  return *slot;
}

double NetworkGraph::kappa(NodeId i, NodeId j, double alpha) const {
  if (alpha <= 1.0) throw std::invalid_argument("kappa: alpha must exceed 1");
  if (i == j) return 0.0;
  const PathRow& r = row(i);
  if (r.hops[j] < 0) return 0.0;
  return r.bottleneck[j] / (alpha * r.hops[j]);
}

std::vector<NodeId> NetworkGraph::shortest_path(NodeId i, NodeId j) const {
  if (i == j) return {};
  const PathRow& fwd = row(i);
  if (fwd.hops[j] < 0) return {};
  const PathRow rev = compute_row(j, true);
  const int total_hops = fwd.hops[j];
  const double target = fwd.bottleneck[j];

  // Walk forward, keeping the bottleneck achievable and always taking the
  // smallest node id; this realizes the lexicographically smallest sequence
  // among fewest-hop, maximum-bottleneck paths.
  std::vector<NodeId> path{i};
  NodeId u = i;
  double so_far = std::numeric_limits<double>::infinity();
  for (int step = 0; step < total_hops; ++step) {
    NodeId next = -1;
    for (NodeId v : adj_[u]) {
      if (fwd.hops[v] != step + 1 || rev.hops[v] != total_hops - step - 1) continue;
      const double through =
          std::min({so_far, rt_[static_cast<size_t>(u) * n_ + v], rev.bottleneck[v]});
      if (through >= target) {
        next = v;
        break;  // adj_ is sorted ascending
      }
    }
    if (next < 0) return {};  // unreachable under exact float comparison
    so_far = std::min(so_far, rt_[static_cast<size_t>(u) * n_ + next]);
    path.push_back(next);
    u = next;
  }
  return path;
}

void NetworkGraph::invalidate_kappa_cache() const {
  for (auto& slot : rows_) slot.reset();
}

double compute_chi_max(const NetworkGraph& graph, double alpha) {
  if (alpha <= 1.0) throw std::invalid_argument("compute_chi_max: alpha must exceed 1");
  double sum = 0.0;
  for (NodeId i = 0; i < graph.size(); ++i) {
    for (NodeId j : graph.neighbors(i)) sum += graph.rate(i, j) / alpha;
  }
  return sum > 0.0 ? sum : 1.0;
}

}  // namespace coalform
