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

#include <doctest.h>

#include "support.hpp"

using namespace coalform;
using coalform::test::close;

namespace {

ObjectiveParams basic_params(double chi_max, double e_max) {
  ObjectiveParams p;
  p.chi_max = chi_max;
  p.e_max = e_max;
  return p;
}

}  // namespace

TEST_CASE("chi_intra: singleton, adjacent pair, hand-built 6-node cluster") {
  const auto pair_graph = NetworkGraph::from_rates(2, {{0, 1, 10.0, 10.0}});
  CHECK(chi_intra(Coalition{0, {0}, 0}, pair_graph, 2.0) == 0.0);
  CHECK(close(chi_intra(Coalition{0, {0, 1}, 0}, pair_graph, 2.0), 10.0, 1e-12));

  // One 6-node cluster with eight drawn edges; asymmetric rates so the
  // ordered-pair sum is visible.
  const auto g = NetworkGraph::from_rates(6, {{0, 1, 6.0, 6.5},
                                              {0, 2, 4.0, 4.5},
                                              {0, 3, 8.0, 8.5},
                                              {1, 3, 7.0, 7.5},
                                              {2, 3, 5.0, 5.5},
                                              {2, 4, 3.0, 3.5},
                                              {3, 5, 9.0, 9.5},
                                              {4, 5, 2.0, 2.5}});
  const double alpha = 2.0;
  const double hand = (6.0 + 6.5 + 4.0 + 4.5 + 8.0 + 8.5 + 7.0 + 7.5 + 5.0 + 5.5 + 3.0 + 3.5 +
                       9.0 + 9.5 + 2.0 + 2.5) /
                      alpha;
  CHECK(close(chi_intra(Coalition{0, {0, 1, 2, 3, 4, 5}, 0}, g, alpha), hand, 1e-12));
  // Sub-cluster {0,1,3}: only the edges inside it count.
  const double sub = (6.0 + 6.5 + 8.0 + 8.5 + 7.0 + 7.5) / alpha;
  CHECK(close(chi_intra(Coalition{0, {0, 1, 3}, 0}, g, alpha), sub, 1e-12));
}

TEST_CASE("chi_inter sums outgoing head-to-head capacities") {
  // Line 1 - 4 - 6 (node ids 0, 1, 2 here): three clusters, heads all three.
  const auto g = NetworkGraph::from_rates(3, {{0, 1, 10.0, 12.0}, {1, 2, 6.0, 8.0}});
  std::vector<Coalition> cs{{0, {0}, 0}, {1, {1}, 0}, {2, {2}, 0}};
  const Partition p(3, cs);
  ObjectiveParams params = basic_params(1.0, 1.0);
  const double alpha = params.alpha;

  const double k01 = 10.0 / alpha, k10 = 12.0 / alpha;
  const double k12 = 6.0 / alpha, k21 = 8.0 / alpha;
  const double k02 = std::min(10.0, 6.0) / (alpha * 2), k20 = std::min(8.0, 12.0) / (alpha * 2);

  CHECK(close(chi_inter(p.coalition(0), p, g, params), params.beta * (k01 + k02), 1e-12));
  CHECK(close(chi_inter(p.coalition(1), p, g, params), params.beta * (k10 + k12), 1e-12));
  CHECK(close(chi_inter(p.coalition(2), p, g, params), params.beta * (k21 + k20), 1e-12));

  // Total over clusters covers both directions of every head pair.
  const double total = chi_inter(p.coalition(0), p, g, params) +
                       chi_inter(p.coalition(1), p, g, params) +
                       chi_inter(p.coalition(2), p, g, params);
  CHECK(close(total, params.beta * (k01 + k10 + k12 + k21 + k02 + k20), 1e-12));

  ObjectiveParams zero_beta = params;
  zero_beta.beta = 0.0;
  CHECK(chi_inter(p.coalition(0), p, g, zero_beta) == 0.0);

  // Single-cluster partition: no other heads.
  const Partition whole(3, {{1, {0, 1, 2}, 0}});
  CHECK(chi_inter(whole.coalition(0), whole, g, params) == 0.0);
}

TEST_CASE("overhead terms") {
  ObjectiveParams params = basic_params(1.0, 1.0);
  const Partition lone(1, {{0, {0}, 0}});
  CHECK(overhead(lone.coalition(0), lone, params) == 0.0);

  CHECK(overhead_intra(15, params) == 210.0);

  // Sum of per-cluster inter shares over M clusters equals v_inter*M*(M-1).
  for (int m = 1; m <= 12; ++m) {
    CHECK(close(m * overhead_inter(m, params), params.v_inter * m * (m - 1.0), 1e-12));
  }
}

TEST_CASE("feasibility: size, diameter, connectivity") {
  ObjectiveParams params = basic_params(1.0, 1.0);

  const auto lone = NetworkGraph::from_rates(1, {});
  CHECK(feasible(Coalition{0, {0}, 0}, lone, params));

  // 16 fully-connected members exceed n_max = 15.
  std::vector<std::tuple<NodeId, NodeId, double, double>> edges;
  std::vector<NodeId> all;
  for (NodeId i = 0; i < 16; ++i) {
    all.push_back(i);
    for (NodeId j = i + 1; j < 16; ++j) edges.push_back({i, j, 1.0, 1.0});
  }
  const auto clique = NetworkGraph::from_rates(16, edges);
  CHECK_FALSE(feasible(Coalition{0, all, 0}, clique, params));
  std::vector<NodeId> fifteen(all.begin(), all.end() - 1);
  CHECK(feasible(Coalition{0, fifteen, 0}, clique, params));

  // Path of four nodes: diameter 3 > d_max = 2.
  const auto path4 = NetworkGraph::from_rates(
      4, {{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}, {2, 3, 1.0, 1.0}});
  CHECK_FALSE(feasible(Coalition{0, {0, 1, 2, 3}, 0}, path4, params));
  CHECK(feasible(Coalition{0, {0, 1, 2}, 0}, path4, params));

  // Disconnected members are infeasible.
  CHECK_FALSE(feasible(Coalition{0, {0, 3}, 0}, path4, params));
}

TEST_CASE("coalition value: infeasible zero and the zeta=1 singleton") {
  ObjectiveParams params = basic_params(1.0, 1.0);
  const auto path4 = NetworkGraph::from_rates(
      4, {{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}, {2, 3, 1.0, 1.0}});
  const Partition bad(4, {{0, {0, 1, 2, 3}, 0}});
  CHECK(coalition_value(bad.coalition(0), bad, path4, params) == 0.0);

  // zeta = 1, all singletons, no inter-cluster data volume: v = 1/N each.
  ObjectiveParams zparams;
  zparams.zeta = 1.0;
  zparams.v_inter = 0.0;
  const int n = 4;
  zparams.chi_max = 1.0;
  zparams.e_max = zparams.v_intra * n * (n - 1.0);
  const Partition singles = Partition::singletons(n);
  for (int i = 0; i < n; ++i) {
    CHECK(close(coalition_value(singles.coalition(i), singles, path4, zparams), 1.0 / n, 1e-12));
  }
}

TEST_CASE("global objective endpoints") {
  const auto inst = coalform::test::make_instance(12, 700.0, 3);

  // zeta = 1, all singletons: G1 = (e_max - v_inter*N*(N-1)) / e_max.
  ObjectiveParams p1 = inst.params;
  p1.zeta = 1.0;
  const Partition singles = Partition::singletons(12);
  const double expected = (p1.e_max - p1.v_inter * 12 * 11) / p1.e_max;
  CHECK(close(global_objective(singles, inst.graph, p1), expected, 1e-12));

  // zeta = 0: G1 is exactly chi_total / chi_max.
  ObjectiveParams p0 = inst.params;
  p0.zeta = 0.0;
  const ObjectiveBreakdown b = partition_breakdown(singles, inst.graph, p0);
  CHECK(close(b.g1, (b.chi_intra + b.chi_inter) / p0.chi_max, 1e-12));
}

TEST_CASE("sum of coalition values equals the global objective on feasible partitions") {
  int checked = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = coalform::test::make_instance(10, 650.0, seed);
    Rng rng(mix_seed(900, seed));
    for (int k = 0; k < 20; ++k) {
      const Partition p = coalform::test::random_feasible_partition(inst.graph, inst.params, rng);
      const double lhs = value_sum(p, inst.graph, inst.params);
      const double rhs = global_objective(p, inst.graph, inst.params);
      CHECK(close(lhs, rhs, 1e-9));
      ++checked;
    }
  }
  CHECK(checked == 200);
}

TEST_CASE("coalition value depends on outsiders only through M and the heads") {
  // Two triangles joined by the single bridge 2-3, so the subject's head can
  // reach the other heads but their internal membership cannot matter.
  const auto g = NetworkGraph::from_rates(6, {{0, 1, 10.0, 10.0},
                                              {1, 2, 8.0, 8.0},
                                              {0, 2, 9.0, 9.0},
                                              {2, 3, 4.0, 4.0},
                                              {3, 4, 7.0, 7.0},
                                              {4, 5, 6.0, 6.0},
                                              {3, 5, 5.0, 5.0}});
  ObjectiveParams params = basic_params(40.0, 7.2);
  const Coalition subject{0, {0, 1, 2}, 0};

  // Same M, same head set, different membership arrangement of the others.
  const Partition arr1(6, {subject, {3, {3, 4}, 0}, {5, {5}, 0}});
  const Partition arr2(6, {subject, {3, {3}, 0}, {5, {4, 5}, 0}});
  const double v1 = coalition_value(arr1.coalition(0), arr1, g, params);
  const double v2 = coalition_value(arr2.coalition(0), arr2, g, params);
  CHECK(v1 == v2);

  // Changing the head set changes the value.
  const Partition arr3(6, {subject, {4, {3, 4}, 0}, {5, {5}, 0}});
  const double v3 = coalition_value(arr3.coalition(0), arr3, g, params);
  CHECK(v1 != v3);
}

TEST_CASE("G1 stays within [0, 1] under the normalization bounds") {
  for (uint64_t seed = 30; seed < 36; ++seed) {
    const auto inst = coalform::test::make_instance(15, 800.0, seed);
    Rng rng(seed);
    for (int k = 0; k < 10; ++k) {
      const Partition p = coalform::test::random_feasible_partition(inst.graph, inst.params, rng);
      const ObjectiveBreakdown b = partition_breakdown(p, inst.graph, inst.params);
      if (b.chi_intra + b.chi_inter <= inst.params.chi_max &&
          b.e_intra + b.e_inter <= inst.params.e_max) {
        CHECK(b.g1 >= 0.0);
        CHECK(b.g1 <= 1.0);
      }
    }
  }
}

TEST_CASE("overhead grows strictly with membership") {
  ObjectiveParams params = basic_params(1.0, 1.0);
  for (int s = 1; s < 20; ++s) {
    CHECK(overhead_intra(s + 1, params) > overhead_intra(s, params));
  }
}

TEST_CASE("size feasibility is hereditary under member removal") {
  ObjectiveParams params = basic_params(1.0, 1.0);
  std::vector<std::tuple<NodeId, NodeId, double, double>> edges;
  for (NodeId i = 0; i < 10; ++i) {
    for (NodeId j = i + 1; j < 10; ++j) edges.push_back({i, j, 1.0, 1.0});
  }
  const auto clique = NetworkGraph::from_rates(10, edges);
  std::vector<NodeId> members;
  for (NodeId i = 0; i < 10; ++i) members.push_back(i);
  REQUIRE(feasible_members(members, clique, params));
  while (members.size() > 1) {
    members.pop_back();
    CHECK(static_cast<int>(members.size()) <= params.n_max);
    CHECK(feasible_members(members, clique, params));
  }
}

TEST_CASE("derive_objective_params fills normalizers") {
  const auto inst = coalform::test::make_instance(20, 900.0, 4);
  CHECK(inst.params.e_max == (inst.params.v_intra + inst.params.v_inter) * 20 * 19);
  double manual = 0.0;
  for (NodeId i = 0; i < inst.graph.size(); ++i) {
    for (NodeId j : inst.graph.neighbors(i)) manual += inst.graph.rate(i, j) / inst.params.alpha;
  }
  CHECK(close(inst.params.chi_max, manual, 1e-12));
  CHECK_THROWS_AS(derive_objective_params(ObjectiveParams{}, NetworkGraph::from_rates(1, {})),
                  std::invalid_argument);
}
