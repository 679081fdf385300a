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

#include "coalform/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "coalform/scoring.hpp"  // kMinGain

namespace coalform {

namespace {

int popcount(unsigned mask) { return __builtin_popcount(mask); }

std::vector<NodeId> mask_members(unsigned mask) {
  std::vector<NodeId> out;
  for (int b = 0; mask; ++b, mask >>= 1) {
    if (mask & 1u) out.push_back(b);
  }
  return out;
}

struct SubsetTables {
  std::vector<double> chi_intra;
  std::vector<uint8_t> feasible;
};

SubsetTables build_subset_tables(const NetworkGraph& graph, const ObjectiveParams& params) {
  const int n = graph.size();
  SubsetTables t;
  const size_t count = size_t{1} << n;
  t.chi_intra.assign(count, 0.0);
  t.feasible.assign(count, 0);
  for (unsigned mask = 1; mask < count; ++mask) {
    const std::vector<NodeId> members = mask_members(mask);
    Coalition c;
    c.head = members.front();
    c.members = members;
    t.chi_intra[mask] = chi_intra(c, graph, params.alpha);
    t.feasible[mask] = feasible(c, graph, params) ? 1 : 0;
  }
  return t;
}

}  // namespace

void for_each_partition(const NetworkGraph& graph, const ObjectiveParams& params,
                        const std::function<void(const EnumeratedPartition&)>& visit) {
  const int n = graph.size();
  if (n < 1 || n > 10)
    throw std::invalid_argument("for_each_partition: enumeration limited to 1..10 nodes");
  const SubsetTables tables = build_subset_tables(graph, params);

  std::vector<unsigned> blocks;
  std::vector<NodeId> heads;

  auto score_heads = [&](auto&& self, size_t block_idx, double inter_sum) -> void {
    if (block_idx == blocks.size()) {
      const int m = static_cast<int>(blocks.size());
      double chi_total = 0.0;
      double e_intra_sum = 0.0;
      bool all_feasible = true;
      std::vector<Coalition> cs;
      cs.reserve(m);
      for (size_t k = 0; k < blocks.size(); ++k) {
        const unsigned mask = blocks[k];
        chi_total += tables.chi_intra[mask];
        const int s = popcount(mask);
        e_intra_sum += overhead_intra(s, params);
        all_feasible = all_feasible && tables.feasible[mask];
        cs.push_back(Coalition{heads[k], mask_members(mask), 0});
      }
      chi_total += params.beta * inter_sum;
      const double e_total = e_intra_sum + m * overhead_inter(m, params);
      EnumeratedPartition ep;
      ep.partition = Partition(n, std::move(cs));
      ep.score = (1.0 - params.zeta) * chi_total / params.chi_max +
                 params.zeta * (params.e_max - e_total) / params.e_max;
      ep.feasible = all_feasible;
      visit(ep);
      return;
    }
    for (NodeId cand : mask_members(blocks[block_idx])) {
      double extra = 0.0;  // both kappa directions against already chosen heads
      for (size_t k = 0; k < block_idx; ++k) {
        extra += graph.kappa(cand, heads[k], params.alpha) +
                 graph.kappa(heads[k], cand, params.alpha);
      }
      heads.push_back(cand);
      self(self, block_idx + 1, inter_sum + extra);
      heads.pop_back();
    }
  };

  auto build = [&](auto&& self, NodeId next) -> void {
    if (next == n) {
      score_heads(score_heads, 0, 0.0);
      return;
    }
    // Index-based: recursion grows and shrinks `blocks` behind this frame.
    const size_t existing = blocks.size();
    for (size_t b = 0; b < existing; ++b) {
      blocks[b] |= 1u << next;
      self(self, next + 1);
      blocks[b] &= ~(1u << next);
    }
    blocks.push_back(1u << next);
    self(self, next + 1);
    blocks.pop_back();
  };
  build(build, 0);
}

std::vector<EnumeratedPartition> enumerate_all(const NetworkGraph& graph,
                                               const ObjectiveParams& params) {
  std::vector<EnumeratedPartition> out;
  for_each_partition(graph, params, [&](const EnumeratedPartition& ep) { out.push_back(ep); });
  return out;
}

std::optional<EnumeratedPartition> best_feasible_partition(const NetworkGraph& graph,
                                                           const ObjectiveParams& params) {
  std::optional<EnumeratedPartition> best;
  for_each_partition(graph, params, [&](const EnumeratedPartition& ep) {
    if (!ep.feasible) return;
    if (!best || ep.score > best->score) best = ep;
  });
  return best;
}

namespace {

/// Head succession, written afresh: the remaining member with the largest
/// in-coalition kappa involvement, ties to the lowest id.
NodeId succeed_head(const std::vector<NodeId>& members, const NetworkGraph& graph,
                    const ObjectiveParams& params) {
  NodeId best = members.front();
  double best_score = -1.0;
  for (NodeId m : members) {
    double s = 0.0;
    for (NodeId j : members) {
      if (j != m && graph.has_edge(m, j))
        s += graph.kappa(m, j, params.alpha) + graph.kappa(j, m, params.alpha);
    }
    if (s > best_score) {
      best_score = s;
      best = m;
    }
  }
  return best;
}

struct RawCoalition {
  NodeId head;
  std::vector<NodeId> members;
  bool changed = false;  // membership changed relative to the pre-state
};

/// Applies one operation to a plain coalition list; returns false when the
/// operation is degenerate (would not change anything valid).
bool mutate(std::vector<RawCoalition>& cs, OpKind kind, int src, int dst, NodeId actor,
            NodeId counterpart, const NetworkGraph& graph, const ObjectiveParams& params) {
  auto erase_member = [](RawCoalition& c, NodeId id) {
    c.members.erase(std::find(c.members.begin(), c.members.end(), id));
    c.changed = true;
  };
  auto insert_member = [](RawCoalition& c, NodeId id) {
    c.members.insert(std::lower_bound(c.members.begin(), c.members.end(), id), id);
    c.changed = true;
  };
  auto fix_head = [&](RawCoalition& c, NodeId departed) {
    if (c.head == departed) c.head = succeed_head(c.members, graph, params);
  };
  switch (kind) {
    case OpKind::HeadElection:
      if (cs[src].head == actor) return false;
      cs[src].head = actor;
      return true;
    case OpKind::Switch:
      if (counterpart < 0) {  // join
        if (src == dst) return false;
        erase_member(cs[src], actor);
        insert_member(cs[dst], actor);
        if (!cs[src].members.empty()) fix_head(cs[src], actor);
        return true;
      }
      if (src == dst) return false;
      erase_member(cs[src], actor);
      erase_member(cs[dst], counterpart);
      insert_member(cs[src], counterpart);
      insert_member(cs[dst], actor);
      fix_head(cs[src], actor);
      fix_head(cs[dst], counterpart);
      return true;
    case OpKind::Replace:
      if (src == dst) {  // expel a co-member
        erase_member(cs[src], counterpart);
        fix_head(cs[src], counterpart);
      } else {
        erase_member(cs[src], actor);
        erase_member(cs[dst], counterpart);
        insert_member(cs[dst], actor);
        if (!cs[src].members.empty()) fix_head(cs[src], actor);
        fix_head(cs[dst], counterpart);
      }
      cs.push_back(RawCoalition{counterpart, {counterpart}, true});
      return true;
  }
  return false;
}

}  // namespace

std::optional<OperationProposal> verify_nash_witness(const Partition& partition,
                                                     const NetworkGraph& graph,
                                                     const ObjectiveParams& params) {
  const int n = graph.size();
  if (n > 12) throw std::invalid_argument("verify_nash: limited to 12 nodes");
  partition.validate();
  const double phi_pre = value_sum(partition, graph, params);
  const int m = partition.coalition_count();

  auto try_op = [&](OpKind kind, NodeId actor, NodeId counterpart,
                    int dst) -> std::optional<OperationProposal> {
    const int src = partition.index_of(actor);
    std::vector<RawCoalition> cs;
    cs.reserve(m + 1);
    for (const Coalition& c : partition.coalitions())
      cs.push_back(RawCoalition{c.head, c.members, false});
    if (!mutate(cs, kind, src, dst, actor, counterpart, graph, params)) return std::nullopt;

    std::vector<Coalition> post;
    std::vector<uint8_t> changed;
    for (const RawCoalition& rc : cs) {
      if (rc.members.empty()) continue;
      post.push_back(Coalition{rc.head, rc.members, 0});
      changed.push_back(rc.changed ? 1 : 0);
    }
    const Partition post_partition(n, std::move(post));

    // Admissibility: every coalition the operation re-formed must have a
    // positive value; head elections re-form nothing.
    if (kind != OpKind::HeadElection) {
      for (int ci = 0; ci < post_partition.coalition_count(); ++ci) {
        if (changed[ci] &&
            coalition_value(post_partition.coalition(ci), post_partition, graph, params) <= 0.0)
          return std::nullopt;
      }
    }
    const double g = value_sum(post_partition, graph, params) - phi_pre;
    if (g <= kMinGain) return std::nullopt;
    OperationProposal op;
    op.kind = kind;
    op.actor = actor;
    if (counterpart >= 0) op.counterpart = counterpart;
    op.src = src;
    op.dst = dst >= 0 ? std::optional<int>(dst) : std::nullopt;
    op.gain = g;
    return op;
  };

  for (NodeId i = 0; i < n; ++i) {
    const int src = partition.index_of(i);
    // Head election in the own coalition.
    if (partition.coalition(src).head != i) {
      if (auto w = try_op(OpKind::HeadElection, i, partition.coalition(src).head, src)) return w;
    }
    // The own cluster enters the operation set only when it holds a one-hop
    // neighbor of i, exactly like any other neighbor cluster. Cross-cluster
    // operations need no such test here: a target without a neighbor of i
    // cannot form a connected coalition and is pruned by admissibility.
    bool own_is_neighbor = false;
    for (NodeId j : partition.coalition(src).members) {
      if (j != i && graph.has_edge(i, j)) {
        own_is_neighbor = true;
        break;
      }
    }
    for (int c = 0; c < m; ++c) {
      if (c != src) {
        if (auto w = try_op(OpKind::Switch, i, -1, c)) return w;  // join
      }
      for (NodeId j : partition.coalition(c).members) {
        if (j == i) continue;
        if (c != src) {
          if (auto w = try_op(OpKind::Switch, i, j, c)) return w;
          if (auto w = try_op(OpKind::Replace, i, j, c)) return w;
        } else if (own_is_neighbor) {
          if (auto w = try_op(OpKind::Replace, i, j, c)) return w;
        }
      }
    }
  }
  return std::nullopt;
}

bool verify_nash(const Partition& partition, const NetworkGraph& graph,
                 const ObjectiveParams& params) {
  return !verify_nash_witness(partition, graph, params).has_value();
}

}  // namespace coalform
