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

#include "coalform/baselines.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace coalform {

Partition ca_bp_init(const NetworkGraph& graph, const ObjectiveParams& params) {
  const int n = graph.size();
  std::vector<uint8_t> clustered(n, 0);
  std::vector<Coalition> coalitions;
  std::vector<NodeId> dropped;

  for (NodeId id = 0; id < n; ++id) {
    if (clustered[id]) continue;
    // id is the lowest unclustered node, hence a local minimum of its
    // unclustered neighborhood.
    Coalition c;
    c.head = id;
    c.members.push_back(id);
    clustered[id] = 1;
    for (NodeId j : graph.neighbors(id)) {
      if (!clustered[j]) {
        c.members.push_back(j);
        clustered[j] = 1;
      }
    }
    std::sort(c.members.begin(), c.members.end());
    while (c.size() > params.n_max) {  // shed highest ids; the head is the lowest
      dropped.push_back(c.members.back());
      c.members.pop_back();
    }
    coalitions.push_back(std::move(c));
  }
  std::sort(dropped.begin(), dropped.end());
  for (NodeId id : dropped) coalitions.push_back(Coalition{id, {id}, 0});
  return Partition(n, std::move(coalitions));
}

void greedy_unilateral(EngineState& state, GraphSequence& seq, const ObjectiveParams& params,
                       int slots) {
  LearningParams learn;
  learn.greedy = true;
  run(state, seq, params, learn, slots, OperationCatalog::JoinsOnly);
}

namespace {

struct MstCandidate {
  // kinds ordered for deterministic ties: merge < split < transfer
  int kind = -1;
  int a = -1;  // merge: coalition pair; split: coalition, member; transfer: node, coalition
  int b = -1;
  double gain = 0.0;
  PartitionEdit edit;
};

bool better_candidate(const MstCandidate& x, const MstCandidate& y) {
  if (x.gain != y.gain) return x.gain > y.gain;
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

/// Head maximizing the coalition's own value given the other heads.
NodeId best_head(const std::vector<NodeId>& members, std::span<const NodeId> other_heads,
                 int m_post, const NetworkGraph& graph, const ObjectiveParams& params) {
  NodeId best = members.front();
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<NodeId> heads(other_heads.begin(), other_heads.end());
  heads.push_back(-1);
  for (NodeId cand : members) {
    heads.back() = cand;
    const double v =
        coalition_value_in_context(members, cand, heads, m_post, graph, params);
    if (v > best_value) {  // ascending members keep ties at the lowest id
      best_value = v;
      best = cand;
    }
  }
  return best;
}

}  // namespace

Partition mst_cfa(const NetworkGraph& graph, const ObjectiveParams& params,
                  const Partition* initial, std::vector<MstIterationRecord>* trace) {
  Partition partition = initial ? *initial : Partition::singletons(graph.size());
  partition.validate();
  PartitionScores scores;
  scores.rebuild(partition, graph, params);

  auto other_heads = [&](std::initializer_list<int> excluded) {
    std::vector<NodeId> heads;
    heads.reserve(partition.coalition_count());
    for (int i = 0; i < partition.coalition_count(); ++i) {
      if (std::find(excluded.begin(), excluded.end(), i) == excluded.end())
        heads.push_back(partition.coalition(i).head);
    }
    return heads;
  };

  for (int iteration = 0;; ++iteration) {
    MstCandidate best;
    auto consider = [&](MstCandidate cand) {
      const auto eval = scores.evaluate(partition, cand.edit, graph, params);
      if (!eval.all_added_feasible) return;
      if (eval.gain <= kMinGain) return;
      cand.gain = eval.gain;
      if (best.kind < 0 || better_candidate(cand, best)) best = std::move(cand);
    };

    // Merges of coalitions joined by at least one edge.
    std::vector<std::pair<int, int>> pairs;
    for (NodeId u = 0; u < graph.size(); ++u) {
      const int cu = partition.index_of(u);
      for (NodeId v : graph.neighbors(u)) {
        const int cv = partition.index_of(v);
        if (cu < cv) pairs.emplace_back(cu, cv);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (auto [ca, cb] : pairs) {
      const Coalition& a = partition.coalition(ca);
      const Coalition& b = partition.coalition(cb);
      if (a.size() + b.size() > params.n_max) continue;
      std::vector<NodeId> merged;
      merged.reserve(a.size() + b.size());
      std::merge(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                 std::back_inserter(merged));
      if (!feasible_members(merged, graph, params)) continue;
      MstCandidate cand;
      cand.kind = 0;
      cand.a = ca;
      cand.b = cb;
      const auto heads = other_heads({ca, cb});
      const NodeId head =
          best_head(merged, heads, partition.coalition_count() - 1, graph, params);
      cand.edit.removed = {ca, cb};
      cand.edit.added = {Coalition{head, std::move(merged), 0}};
      consider(std::move(cand));
    }

    // Single-member splits.
    for (int ci = 0; ci < partition.coalition_count(); ++ci) {
      const Coalition& c = partition.coalition(ci);
      if (c.size() < 2) continue;
      for (NodeId m : c.members) {
        std::vector<NodeId> rest;
        rest.reserve(c.members.size() - 1);
        for (NodeId x : c.members) {
          if (x != m) rest.push_back(x);
        }
        if (!feasible_members(rest, graph, params)) continue;
        MstCandidate cand;
        cand.kind = 1;
        cand.a = ci;
        cand.b = m;
        auto heads = other_heads({ci});
        heads.push_back(m);  // the peeled singleton's head
        const NodeId rest_head =
            best_head(rest, heads, partition.coalition_count() + 1, graph, params);
        cand.edit.removed = {ci};
        cand.edit.added = {Coalition{rest_head, std::move(rest), 0}, Coalition{m, {m}, 0}};
        consider(std::move(cand));
      }
    }

    // Transfers of one node into a coalition holding a neighbor.
    for (NodeId u = 0; u < graph.size(); ++u) {
      const int cu = partition.index_of(u);
      std::vector<int> targets;
      for (NodeId v : graph.neighbors(u)) {
        const int cv = partition.index_of(v);
        if (cv != cu) targets.push_back(cv);
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      const Coalition& from = partition.coalition(cu);
      std::vector<NodeId> rest;
      for (NodeId x : from.members) {
        if (x != u) rest.push_back(x);
      }
      if (!rest.empty() && !feasible_members(rest, graph, params)) continue;
      for (int cv : targets) {
        const Coalition& to = partition.coalition(cv);
        if (to.size() + 1 > params.n_max) continue;
        std::vector<NodeId> joined = to.members;
        joined.insert(std::lower_bound(joined.begin(), joined.end(), u), u);
        if (!feasible_members(joined, graph, params)) continue;
        MstCandidate cand;
        cand.kind = 2;
        cand.a = u;
        cand.b = cv;
        cand.edit.removed = {cu, cv};
        const int m_post = partition.coalition_count() - (rest.empty() ? 1 : 0);
        auto heads = other_heads({cu, cv});
        if (!rest.empty()) {
          // pick both heads against the surroundings, rest first
          auto heads_for_rest = heads;
          heads_for_rest.push_back(-1);  // placeholder for joined's head, unknown yet
          // Evaluate rest head with the joined head approximated by its
          // current head; then the joined head against the chosen rest head.
          heads_for_rest.back() = to.head;
          const NodeId rest_head = best_head(rest, heads_for_rest, m_post, graph, params);
          auto heads_for_joined = heads;
          heads_for_joined.push_back(rest_head);
          const NodeId join_head = best_head(joined, heads_for_joined, m_post, graph, params);
          cand.edit.added = {Coalition{rest_head, rest, 0}, Coalition{join_head, joined, 0}};
        } else {
          const NodeId join_head = best_head(joined, heads, m_post, graph, params);
          cand.edit.added = {Coalition{join_head, joined, 0}};
        }
        consider(std::move(cand));
      }
    }

    if (best.kind < 0) break;
    const auto eval = scores.evaluate(partition, best.edit, graph, params);
    scores.commit(partition, best.edit, eval, graph, params);
    if (trace) {
      const ObjectiveBreakdown b = partition_breakdown(partition, graph, params);
      trace->push_back({iteration, b.g1, b.chi_intra + b.chi_inter, b.e_intra + b.e_inter,
                        partition.coalition_count(), eval.gain});
    }
  }
  return partition;
}

}  // namespace coalform
