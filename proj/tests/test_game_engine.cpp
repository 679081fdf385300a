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

#include <cmath>

#include "support.hpp"

using namespace coalform;
using coalform::test::close;

namespace {

/// Test-side application of a proposal: rebuilds the post partition from the
/// operation's documented meaning using only public pieces, independent of
/// the engine's edit machinery.
Partition apply_shape(const Partition& p, const OperationProposal& op, const NetworkGraph& g,
                      const ObjectiveParams& params) {
  const NodeId actor = op.actor;
  const NodeId mate = op.counterpart.value_or(-1);
  std::vector<std::vector<NodeId>> members;
  std::vector<NodeId> heads;
  for (const Coalition& c : p.coalitions()) {
    members.push_back(c.members);
    heads.push_back(c.head);
  }
  auto erase = [&](int ci, NodeId id) {
    auto& v = members[ci];
    v.erase(std::find(v.begin(), v.end(), id));
  };
  auto insert = [&](int ci, NodeId id) {
    auto& v = members[ci];
    v.insert(std::lower_bound(v.begin(), v.end(), id), id);
  };
  const int src = p.index_of(actor);
  switch (op.kind) {
    case OpKind::HeadElection:
      heads[src] = actor;
      break;
    case OpKind::Switch: {
      if (mate < 0) {
        erase(src, actor);
        insert(*op.dst, actor);
      } else {
        const int dst = p.index_of(mate);
        erase(src, actor);
        erase(dst, mate);
        insert(src, mate);
        insert(dst, actor);
      }
      break;
    }
    case OpKind::Replace: {
      const int dst = p.index_of(mate);
      if (dst == src) {
        erase(src, mate);
      } else {
        erase(src, actor);
        erase(dst, mate);
        insert(dst, actor);
      }
      members.push_back({mate});
      heads.push_back(mate);
      break;
    }
  }
  std::vector<Coalition> cs;
  for (size_t ci = 0; ci < members.size(); ++ci) {
    if (members[ci].empty()) continue;
    Coalition c;
    c.members = members[ci];
    const bool head_alive =
        std::binary_search(c.members.begin(), c.members.end(), heads[ci]);
    c.head = head_alive ? heads[ci] : pick_head({c.members.data(), c.members.size()}, g,
                                                params.alpha);
    cs.push_back(std::move(c));
  }
  return Partition(p.node_count(), std::move(cs));
}

}  // namespace

TEST_CASE("acceptance probability closed form") {
  CHECK(close(acceptance_probability(1.0, 1.0, 0.1), 0.5, 1e-15));
  CHECK(close(acceptance_probability(0.5, 0.5, 0.1), 0.5, 1e-15));
  const double p10 = acceptance_probability(1.0, 0.0, 0.1);
  CHECK(close(p10, 1.0 / (1.0 + std::exp(-10.0)), 1e-12));
  const double p01 = acceptance_probability(0.0, 1.0, 0.1);
  CHECK(close(p01, 1.0 / (1.0 + std::exp(10.0)), 1e-12));
  CHECK(close(p10 + p01, 1.0, 1e-12));
  // Extreme gains stay finite on both branches.
  CHECK(acceptance_probability(1e6, 0.0, 1e-3) == 1.0);
  CHECK(acceptance_probability(0.0, 1e6, 1e-3) == 0.0);
  CHECK_THROWS_AS(acceptance_probability(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("empirical acceptance matches the closed form") {
  Rng rng(2024);
  const int draws = 100000;
  for (auto [gn, gl] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}}) {
    const double p = acceptance_probability(gn, gl, 0.1);
    int hits = 0;
    for (int k = 0; k < draws; ++k) {
      if (rng.bernoulli(p)) ++hits;
    }
    const double sigma = std::sqrt(p * (1.0 - p) / draws);
    CHECK(std::abs(static_cast<double>(hits) / draws - p) <= 3.0 * sigma + 1e-12);
  }
}

TEST_CASE("epsilon schedule decays to its floor") {
  LearningParams lp;
  CHECK(lp.epsilon_at(0) == 0.1);
  CHECK(close(lp.epsilon_at(10), 0.1 * std::pow(0.98, 10), 1e-12));
  CHECK(lp.epsilon_at(100000) == lp.floor);
  LearningParams constant;
  constant.decay = 1.0;
  CHECK(constant.epsilon_at(400) == constant.epsilon0);
}

TEST_CASE("isolated node proposes nothing") {
  const auto g = NetworkGraph::from_rates(3, {{0, 1, 10.0, 10.0}});
  ObjectiveParams params;
  params.chi_max = 10.0;
  params.e_max = 7.2;
  EngineState st = make_engine_state(Partition::singletons(3), g, params, 9);
  CHECK(enumerate_operations(2, st, g, params).empty());
}

namespace {

coalform::test::Instance two_node_instance() {
  coalform::test::Instance inst;
  inst.nodes = {{0, {50.0, 50.0}, {}, 250.0, false}, {1, {150.0, 50.0}, {}, 250.0, false}};
  inst.graph = NetworkGraph::build(inst.nodes, ChannelParams{});
  inst.params = derive_objective_params(ObjectiveParams{}, inst.graph);
  return inst;
}

}  // namespace

TEST_CASE("two-singleton merge gain is the direct v difference") {
  // Two nodes in range: the join gain has no spill-over terms beyond the two
  // coalitions, so it must equal v({0,1}) - v({0}) - v({1}).
  const auto inst = two_node_instance();
  REQUIRE(inst.graph.has_edge(0, 1));
  EngineState st = make_engine_state(Partition::singletons(2), inst.graph, inst.params, 5);
  const auto ops = enumerate_operations(0, st, inst.graph, inst.params);
  REQUIRE(!ops.empty());
  const auto join = ops.front();
  CHECK(join.kind == OpKind::Switch);
  CHECK_FALSE(join.counterpart.has_value());

  const Partition merged(2, {{0, {0, 1}, 0}});
  const double v_pair = coalition_value(merged.coalition(0), merged, inst.graph, inst.params);
  const Partition singles = Partition::singletons(2);
  const double v0 = coalition_value(singles.coalition(0), singles, inst.graph, inst.params);
  const double v1 = coalition_value(singles.coalition(1), singles, inst.graph, inst.params);
  CHECK(close(join.gain, v_pair - v0 - v1, 1e-12));
}

TEST_CASE("a head already optimal sees no election proposal") {
  // Symmetric pair: both heads are equivalent, election gain is zero.
  const auto g = NetworkGraph::from_rates(2, {{0, 1, 10.0, 10.0}});
  ObjectiveParams params;
  params.chi_max = 10.0;
  params.e_max = 2.4;
  const Partition p(2, {{0, {0, 1}, 0}});
  EngineState st = make_engine_state(p, g, params, 1);
  for (const auto& op : enumerate_operations(1, st, g, params)) {
    CHECK(op.kind != OpKind::HeadElection);
  }
  // And the explicit gain is exactly symmetric: zero.
  OperationProposal election;
  election.kind = OpKind::HeadElection;
  election.actor = 1;
  election.counterpart = 0;
  election.src = 0;
  election.dst = 0;
  CHECK(std::abs(gain(election, st, g, params)) <= kMinGain);
}

TEST_CASE("switch gains are antisymmetric") {
  // For non-head actors a swap and its reverse visit exactly inverse states,
  // so the two gains cancel.
  int pairs_checked = 0;
  for (uint64_t seed = 17; seed < 23; ++seed) {
    const auto inst = coalform::test::make_instance(8, 600.0, seed);
    Rng rng(seed);
    const Partition p = coalform::test::random_feasible_partition(inst.graph, inst.params, rng);
    EngineState st = make_engine_state(p, inst.graph, inst.params, 2);
    for (NodeId i = 0; i < 8; ++i) {
      for (NodeId j = 0; j < 8; ++j) {
        const int ci = st.partition.index_of(i);
        const int cj = st.partition.index_of(j);
        if (i == j || ci == cj) continue;
        if (st.partition.coalition(ci).head == i || st.partition.coalition(cj).head == j)
          continue;
        OperationProposal fwd;
        fwd.kind = OpKind::Switch;
        fwd.actor = i;
        fwd.counterpart = j;
        fwd.src = ci;
        fwd.dst = cj;
        const double g_fwd = gain(fwd, st, inst.graph, inst.params);

        const Partition swapped = apply_shape(st.partition, fwd, inst.graph, inst.params);
        EngineState back = make_engine_state(swapped, inst.graph, inst.params, 3);
        OperationProposal rev;
        rev.kind = OpKind::Switch;
        rev.actor = i;
        rev.counterpart = j;
        rev.src = back.partition.index_of(i);
        rev.dst = back.partition.index_of(j);
        const double g_rev = gain(rev, back, inst.graph, inst.params);
        CHECK(close(g_fwd + g_rev, 0.0, 1e-9));
        ++pairs_checked;
      }
    }
  }
  CHECK(pairs_checked > 0);
}

TEST_CASE("engine gains equal from-scratch rescoring for every enumerable op") {
  int ops_checked = 0;
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    const auto inst = coalform::test::make_instance(8, 600.0, seed);
    Rng rng(mix_seed(55, seed));
    const Partition p = coalform::test::random_feasible_partition(inst.graph, inst.params, rng);
    EngineState st = make_engine_state(p, inst.graph, inst.params, 7);
    const double phi_before = value_sum(st.partition, inst.graph, inst.params);
    for (NodeId i = 0; i < 8; ++i) {
      for (const auto& op : enumerate_operations(i, st, inst.graph, inst.params)) {
        const Partition post = apply_shape(st.partition, op, inst.graph, inst.params);
        const double scratch = value_sum(post, inst.graph, inst.params) - phi_before;
        CHECK(close(op.gain, scratch, 1e-9));
        ++ops_checked;
      }
    }
  }
  CHECK(ops_checked > 15);
}

TEST_CASE("applied operations raise the potential by exactly their gain") {
  for (uint64_t seed = 40; seed <= 45; ++seed) {
    const auto inst = coalform::test::make_instance(12, 700.0, seed);
    EngineState st = make_engine_state(Partition::singletons(12), inst.graph, inst.params, seed);
    GraphSequence seq(inst.nodes, ChannelParams{}, false, 1.0, 700.0, 0);
    LearningParams lp;
    lp.greedy = true;
    run(st, seq, inst.params, lp, 60);
    CHECK(st.reached_fixed_point);
    for (const AppliedOpRecord& rec : st.applied_log) {
      CHECK(rec.op.gain > kMinGain);
      CHECK(rec.phi_after > rec.phi_before);
      CHECK(close(rec.phi_after - rec.phi_before, rec.op.gain, 1e-9));
    }
    // The incremental potential matches a from-scratch recomputation.
    CHECK(close(st.scores.phi(), value_sum(st.partition, inst.graph, inst.params), 1e-9));
  }
}

TEST_CASE("greedy frozen-graph runs end Nash stable with nondecreasing G1") {
  for (uint64_t seed = 70; seed < 78; ++seed) {
    const auto inst = coalform::test::make_instance(20, 900.0, seed);
    EngineState st = make_engine_state(Partition::singletons(20), inst.graph, inst.params, seed);
    GraphSequence seq(inst.nodes, ChannelParams{}, false, 1.0, 900.0, 0);
    LearningParams lp;
    lp.greedy = true;
    run(st, seq, inst.params, lp, 120);
    CHECK(st.reached_fixed_point);
    CHECK(is_nash_stable(st.partition, inst.graph, inst.params));
    for (size_t t = 1; t < st.trace.size(); ++t) {
      CHECK(st.trace[t].g1 >= st.trace[t - 1].g1 - 1e-12);
    }
    // A stable partition yields zero applied operations in a further round.
    EngineState again = make_engine_state(st.partition, inst.graph, inst.params, 999);
    GraphSequence seq2(inst.nodes, ChannelParams{}, false, 1.0, 900.0, 0);
    run(again, seq2, inst.params, lp, 1);
    CHECK(again.applied_log.empty());
  }
}

TEST_CASE("T=1 with no positive operations leaves the state unchanged") {
  // Far-apart nodes: no edges, nothing to do.
  std::vector<Node> nodes{{0, {0.0, 0.0}, {}, 100.0, false},
                          {1, {4000.0, 0.0}, {}, 100.0, false},
                          {2, {0.0, 4000.0}, {}, 100.0, false}};
  const auto g = NetworkGraph::build(nodes, ChannelParams{});
  ObjectiveParams params;
  params.chi_max = 1.0;
  params.e_max = 7.2;
  EngineState st = make_engine_state(Partition::singletons(3), g, params, 3);
  GraphSequence seq(nodes, ChannelParams{}, false, 1.0, 5000.0, 0);
  LearningParams lp;
  run(st, seq, params, lp, 1);
  REQUIRE(st.trace.size() == 1);
  CHECK(st.trace[0].ops_applied == 0);
  CHECK(st.partition.coalition_count() == 3);
}

TEST_CASE("dca_step flips a fair coin on equal gains") {
  // Construct equal trail and maintain gains via the pure probability
  // function; the step-level behavior is covered by the empirical test
  // above, here we pin the exact 0.5.
  CHECK(acceptance_probability(0.25, 0.25, 0.05) == 0.5);
}

TEST_CASE("last applied op re-evaluates as its own inverse after a switch") {
  // Two pairs where the swap is profitable; after applying it, the same
  // node's maintained operation prices the swap-back: minus the gain.
  const auto g = NetworkGraph::from_rates(4, {{0, 1, 1.0, 1.0},
                                              {2, 3, 1.0, 1.0},
                                              {0, 3, 50.0, 50.0},
                                              {1, 2, 50.0, 50.0}});
  ObjectiveParams params;
  params.zeta = 0.5;
  params.chi_max = compute_chi_max(g, params.alpha);
  params.e_max = (params.v_intra + params.v_inter) * 4 * 3;
  const Partition p(4, {{0, {0, 1}, 0}, {2, {2, 3}, 0}});
  EngineState st = make_engine_state(p, g, params, 8);
  const auto ops = enumerate_operations(1, st, g, params);
  REQUIRE(!ops.empty());
  OperationProposal best = ops.front();
  for (const auto& op : ops) {
    if (op.gain > best.gain) best = op;
  }
  CHECK(best.kind == OpKind::Switch);
  REQUIRE(best.counterpart.has_value());
  LearningParams lp;
  lp.greedy = true;
  REQUIRE(dca_step(1, st, g, params, lp));
  REQUIRE(st.last_op[1].has_value());
  // The maintained operation re-anchors to the current coalitions: it now
  // prices the swap-back, which is the exact negation.
  CHECK(close(maintained_gain(1, st, g, params), -best.gain, 1e-9));
}

TEST_CASE("maintained gain is zero after a join consumes its own shape") {
  const auto inst = two_node_instance();
  REQUIRE(inst.graph.has_edge(0, 1));
  EngineState st = make_engine_state(Partition::singletons(2), inst.graph, inst.params, 5);
  LearningParams lp;
  lp.greedy = true;
  REQUIRE(dca_step(0, st, inst.graph, inst.params, lp));
  REQUIRE(st.last_op[0].has_value());
  CHECK(st.last_op[0]->kind == OpKind::Switch);
  CHECK_FALSE(st.last_op[0]->counterpart.has_value());
  CHECK(maintained_gain(0, st, inst.graph, inst.params) == 0.0);
  CHECK(maintained_gain(1, st, inst.graph, inst.params) == 0.0);  // never acted
}

TEST_CASE("trail selection is invariant under power-of-two value scaling") {
  for (uint64_t seed = 5; seed < 9; ++seed) {
    const auto inst = coalform::test::make_instance(14, 800.0, seed);
    Rng rng(seed);
    const Partition p = coalform::test::random_feasible_partition(inst.graph, inst.params, rng);
    for (double scale : {0.5, 2.0, 8.0}) {
      ObjectiveParams scaled = inst.params;
      scaled.value_scale = scale;
      EngineState st1 = make_engine_state(p, inst.graph, inst.params, 1);
      EngineState st2 = make_engine_state(p, inst.graph, scaled, 1);
      for (NodeId i = 0; i < inst.graph.size(); ++i) {
        const auto ops1 = enumerate_operations(i, st1, inst.graph, inst.params);
        const auto ops2 = enumerate_operations(i, st2, inst.graph, scaled);
        REQUIRE(ops1.size() == ops2.size());
        for (size_t k = 0; k < ops1.size(); ++k) {
          CHECK(ops1[k].kind == ops2[k].kind);
          CHECK(ops1[k].counterpart == ops2[k].counterpart);
          CHECK(ops1[k].dst == ops2[k].dst);
          CHECK(ops1[k].gain * scale == ops2[k].gain);
        }
      }
    }
  }
}

TEST_CASE("gain rejects malformed operations") {
  const auto inst = coalform::test::make_instance(6, 500.0, 2);
  EngineState st = make_engine_state(Partition::singletons(6), inst.graph, inst.params, 1);
  OperationProposal bogus;
  bogus.kind = OpKind::Switch;
  bogus.actor = 0;
  bogus.counterpart = 0;  // self-switch
  bogus.src = 0;
  bogus.dst = 0;
  CHECK_THROWS_AS(gain(bogus, st, inst.graph, inst.params), std::invalid_argument);
  bogus.actor = 99;
  CHECK_THROWS_AS(gain(bogus, st, inst.graph, inst.params), std::invalid_argument);
}
