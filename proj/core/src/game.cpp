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

#include "coalform/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coalform {

double LearningParams::epsilon_at(int slot) const {
  const double eps = epsilon0 * std::pow(decay, slot);
  return std::max(eps, floor);
}

void LearningParams::validate() const {
  if (!greedy && epsilon0 <= 0.0)
    throw std::invalid_argument("learning: epsilon0 must be positive");
  if (decay <= 0.0 || decay > 1.0)
    throw std::invalid_argument("learning: decay must lie in (0, 1]");
  if (!greedy && floor <= 0.0) throw std::invalid_argument("learning: floor must be positive");
}

double acceptance_probability(double gain_new, double gain_last, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("acceptance_probability: epsilon must be positive");
  // 1 / (1 + e^((gain_last - gain_new)/eps)), computed on the stable branch.
  const double d = (gain_last - gain_new) / epsilon;
  if (d >= 0.0) {
    const double e = std::exp(-d);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(d));
}

NodeId pick_head(std::span<const NodeId> members, const NetworkGraph& graph, double alpha) {
  NodeId best = members.front();
  double best_score = -1.0;
  for (NodeId m : members) {
    double score = 0.0;
    for (NodeId j : graph.neighbors(m)) {
      if (std::binary_search(members.begin(), members.end(), j))
        score += (graph.rate(m, j) + graph.rate(j, m)) / alpha;
    }
    if (score > best_score) {  // members ascend, so ties keep the lowest id
      best_score = score;
      best = m;
    }
  }
  return best;
}

namespace {

std::vector<NodeId> without(const std::vector<NodeId>& members, NodeId id) {
  std::vector<NodeId> out;
  out.reserve(members.size() - 1);
  for (NodeId m : members) {
    if (m != id) out.push_back(m);
  }
  return out;
}

std::vector<NodeId> with_inserted(const std::vector<NodeId>& members, NodeId id) {
  std::vector<NodeId> out = members;
  out.insert(std::lower_bound(out.begin(), out.end(), id), id);
  return out;
}

Coalition make_coalition(std::vector<NodeId> members, NodeId departed_head_of, NodeId old_head,
                         const NetworkGraph& graph, double alpha, uint64_t uid) {
  // departed_head_of < 0 marks "head unchanged".
  Coalition c;
  c.members = std::move(members);
  c.uid = uid;
  if (departed_head_of >= 0 || !std::binary_search(c.members.begin(), c.members.end(), old_head)) {
    c.head = c.members.size() == 1 ? c.members.front()
                                   : pick_head({c.members.data(), c.members.size()}, graph, alpha);
  } else {
    c.head = old_head;
  }
  return c;
}

/// Builds the partition edit an operation denotes, or nullopt when the shape
/// no longer fits the state.
std::optional<PartitionEdit> build_edit(OpKind kind, NodeId actor, NodeId counterpart, int dst_idx,
                                        const Partition& p, const NetworkGraph& graph,
                                        const ObjectiveParams& params) {
  const int src = p.index_of(actor);
  const double alpha = params.alpha;
  PartitionEdit edit;
  switch (kind) {
    case OpKind::HeadElection: {
      const Coalition& c = p.coalition(src);
      if (counterpart < 0 || c.head != counterpart || counterpart == actor) return std::nullopt;
      Coalition next = c;
      next.head = actor;
      edit.removed = {src};
      edit.added = {std::move(next)};
      return edit;
    }
    case OpKind::Switch: {
      if (counterpart < 0) {  // unilateral join into dst_idx
        if (dst_idx < 0 || dst_idx >= p.coalition_count() || dst_idx == src) return std::nullopt;
        const Coalition& own = p.coalition(src);
        const Coalition& dst = p.coalition(dst_idx);
        edit.removed = {src, dst_idx};
        if (own.size() > 1) {
          edit.added.push_back(make_coalition(without(own.members, actor),
                                              own.head == actor ? actor : -1, own.head, graph,
                                              alpha, own.uid));
        }
        Coalition joined = make_coalition(with_inserted(dst.members, actor), -1, dst.head, graph,
                                          alpha, dst.uid);
        edit.added.push_back(std::move(joined));
        return edit;
      }
      const int dst = p.index_of(counterpart);
      if (dst == src || counterpart == actor) return std::nullopt;
      const Coalition& a = p.coalition(src);
      const Coalition& b = p.coalition(dst);
      edit.removed = {src, dst};
      edit.added.push_back(make_coalition(with_inserted(without(a.members, actor), counterpart),
                                          a.head == actor ? actor : -1, a.head, graph, alpha,
                                          a.uid));
      edit.added.push_back(make_coalition(with_inserted(without(b.members, counterpart), actor),
                                          b.head == counterpart ? counterpart : -1, b.head, graph,
                                          alpha, b.uid));
      return edit;
    }
    case OpKind::Replace: {
      if (counterpart < 0 || counterpart == actor) return std::nullopt;
      const int dst = p.index_of(counterpart);
      if (dst == src) {
        // Expel a co-member to a fresh singleton; the actor stays.
        const Coalition& c = p.coalition(src);
        edit.removed = {src};
        edit.added.push_back(make_coalition(without(c.members, counterpart),
                                            c.head == counterpart ? counterpart : -1, c.head,
                                            graph, alpha, c.uid));
        edit.added.push_back(Coalition{counterpart, {counterpart}, 0});
        return edit;
      }
      const Coalition& own = p.coalition(src);
      const Coalition& tgt = p.coalition(dst);
      edit.removed = {src, dst};
      if (own.size() > 1) {
        edit.added.push_back(make_coalition(without(own.members, actor),
                                            own.head == actor ? actor : -1, own.head, graph,
                                            alpha, own.uid));
      }
      edit.added.push_back(make_coalition(with_inserted(without(tgt.members, counterpart), actor),
                                          tgt.head == counterpart ? counterpart : -1, tgt.head,
                                          graph, alpha, tgt.uid));
      edit.added.push_back(Coalition{counterpart, {counterpart}, 0});
      return edit;
    }
  }
  return std::nullopt;
}

/// Trail-operation order: larger gain first, then kind, then counterpart id,
/// then target index, so replay is deterministic.
bool better_proposal(const OperationProposal& a, const OperationProposal& b) {
  if (a.gain != b.gain) return a.gain > b.gain;
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  const NodeId ca = a.counterpart.value_or(-1);
  const NodeId cb = b.counterpart.value_or(-1);
  if (ca != cb) return ca < cb;
  return a.dst.value_or(-1) < b.dst.value_or(-1);
}

void apply_proposal(EngineState& st, const OperationProposal& op, const NetworkGraph& graph,
                    const ObjectiveParams& params) {
  int dst_idx = op.dst.value_or(-1);
  auto edit = build_edit(op.kind, op.actor, op.counterpart.value_or(-1), dst_idx, st.partition,
                         graph, params);
  if (!edit) throw std::logic_error("apply_proposal: stale operation");
  const auto eval = st.scores.evaluate(st.partition, *edit, graph, params);
  if (std::abs(eval.gain - op.gain) > 1e-9 * std::max(1.0, std::abs(op.gain)))
    throw std::logic_error("apply_proposal: gain drifted since enumeration");
  const double phi_before = st.scores.phi();
  st.scores.commit(st.partition, *edit, eval, graph, params);
  st.applied_log.push_back({st.slot, op, phi_before, st.scores.phi()});
  st.last_op[op.actor] = op;
}

}  // namespace

EngineState make_engine_state(Partition partition, const NetworkGraph& graph,
                              const ObjectiveParams& params, uint64_t engine_seed) {
  EngineState st;
  st.partition = std::move(partition);
  st.partition.validate();
  st.scores.rebuild(st.partition, graph, params);
  st.rng = Rng(engine_seed);
  st.last_op.assign(st.partition.node_count(), std::nullopt);
  return st;
}

std::vector<OperationProposal> enumerate_operations(NodeId i, const EngineState& state,
                                                    const NetworkGraph& graph,
                                                    const ObjectiveParams& params,
                                                    OperationCatalog catalog) {
  const Partition& p = state.partition;
  std::vector<OperationProposal> out;
  const int src = p.index_of(i);

  auto consider = [&](OpKind kind, NodeId counterpart, int dst_idx, bool gate_added_positive) {
    auto edit = build_edit(kind, i, counterpart, dst_idx, p, graph, params);
    if (!edit) return;
    const auto eval = state.scores.evaluate(p, *edit, graph, params);
    if (gate_added_positive && !eval.all_added_positive) return;
    if (eval.gain <= kMinGain) return;
    OperationProposal op;
    op.kind = kind;
    op.actor = i;
    if (counterpart >= 0) op.counterpart = counterpart;
    op.src = src;
    op.dst = dst_idx >= 0 ? std::optional<int>(dst_idx) : std::nullopt;
    if (kind == OpKind::HeadElection) op.dst = src;
    if (kind == OpKind::Switch && counterpart < 0) op.dst_uid = p.coalition(dst_idx).uid;
    op.gain = eval.gain;
    out.push_back(op);
  };

  // Neighbor clusters: clusters holding at least one one-hop neighbor of i.
  std::vector<int> neighbor_clusters;
  for (NodeId j : graph.neighbors(i)) neighbor_clusters.push_back(p.index_of(j));
  std::sort(neighbor_clusters.begin(), neighbor_clusters.end());
  neighbor_clusters.erase(std::unique(neighbor_clusters.begin(), neighbor_clusters.end()),
                          neighbor_clusters.end());

  for (int c : neighbor_clusters) {
    if (c != src) {
      consider(OpKind::Switch, -1, c, true);  // unilateral join
      if (catalog == OperationCatalog::Full) {
        for (NodeId j : p.coalition(c).members) {
          consider(OpKind::Switch, j, c, true);
          consider(OpKind::Replace, j, c, true);
        }
      }
    }
  }

  if (catalog == OperationCatalog::Full) {
    const Coalition& own = p.coalition(src);
    if (own.size() >= 2 && own.head != i) consider(OpKind::HeadElection, own.head, src, false);
  }
  return out;
}

double maintained_gain(NodeId i, const EngineState& state, const NetworkGraph& graph,
                       const ObjectiveParams& params) {
  const auto& last = state.last_op[i];
  if (!last) return 0.0;
  int dst_idx = -1;
  if (last->kind == OpKind::Switch && !last->counterpart) {
    dst_idx = state.partition.find_uid(last->dst_uid);
    if (dst_idx < 0) return 0.0;
  }
  auto edit = build_edit(last->kind, last->actor, last->counterpart.value_or(-1), dst_idx,
                         state.partition, graph, params);
  if (!edit) return 0.0;
  return state.scores.evaluate(state.partition, *edit, graph, params).gain;
}

double gain(const OperationProposal& op, const EngineState& state, const NetworkGraph& graph,
            const ObjectiveParams& params) {
  int dst_idx = op.dst.value_or(-1);
  if (op.kind == OpKind::Switch && !op.counterpart && dst_idx < 0 && op.dst_uid != 0)
    dst_idx = state.partition.find_uid(op.dst_uid);
  if (op.actor < 0 || op.actor >= state.partition.node_count())
    throw std::invalid_argument("gain: bad actor");
  if (state.partition.index_of(op.actor) != op.src)
    throw std::invalid_argument("gain: actor is not in the src coalition");
  auto edit = build_edit(op.kind, op.actor, op.counterpart.value_or(-1), dst_idx, state.partition,
                         graph, params);
  if (!edit) throw std::invalid_argument("gain: operation shape does not fit the state");
  return state.scores.evaluate(state.partition, *edit, graph, params).gain;
}

bool dca_step(NodeId i, EngineState& state, const NetworkGraph& graph,
              const ObjectiveParams& params, const LearningParams& learn,
              OperationCatalog catalog) {
  const auto ops = enumerate_operations(i, state, graph, params, catalog);
  if (ops.empty()) return false;
  const OperationProposal best =
      *std::min_element(ops.begin(), ops.end(),
                        [](const auto& a, const auto& b) { return better_proposal(a, b); });

  bool accept;
  if (learn.greedy) {
    // Zero-temperature limit; the maintain side carries no weight, so the
    // positive-gain trail operation always applies and greedy rounds are
    // plain hill climbing on the summed coalition values.
    accept = best.gain > kMinGain;
  } else {
    const double g_last = maintained_gain(i, state, graph, params);
    accept = state.rng.bernoulli(
        acceptance_probability(best.gain, g_last, learn.epsilon_at(state.slot)));
  }
  if (!accept) return false;
  apply_proposal(state, best, graph, params);
  return true;
}

void run(EngineState& state, GraphSequence& seq, ObjectiveParams params,
         const LearningParams& learn, int slots, OperationCatalog catalog) {
  if (slots < 1) throw std::invalid_argument("run: slots must be at least 1");
  learn.validate();
  const int n = state.partition.node_count();
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;

  for (int t = 0; t < slots; ++t) {
    state.slot = t;
    if (seq.mobility_enabled()) {
      seq.advance();
      params.chi_max = compute_chi_max(seq.current(), params.alpha);
      state.scores.rebuild(state.partition, seq.current(), params);
    }
    state.rng.shuffle(order);
    int applied = 0;
    for (NodeId i : order) {
      if (dca_step(i, state, seq.current(), params, learn, catalog)) ++applied;
    }
    const ObjectiveBreakdown b = partition_breakdown(state.partition, seq.current(), params);
    state.trace.push_back({t, b.g1, b.chi_intra + b.chi_inter, b.e_intra + b.e_inter,
                           state.partition.coalition_count(), applied,
                           learn.greedy ? 0.0 : learn.epsilon_at(t)});
    if (applied == 0 && learn.greedy && !seq.mobility_enabled()) {
      state.reached_fixed_point = true;
      break;
    }
  }
}

std::optional<OperationProposal> nash_witness(const Partition& partition,
                                              const NetworkGraph& graph,
                                              const ObjectiveParams& params) {
  EngineState st = make_engine_state(partition, graph, params, 0);
  for (NodeId i = 0; i < st.partition.node_count(); ++i) {
    const auto ops = enumerate_operations(i, st, graph, params, OperationCatalog::Full);
    if (!ops.empty()) {
      return *std::min_element(ops.begin(), ops.end(),
                               [](const auto& a, const auto& b) { return better_proposal(a, b); });
    }
  }
  return std::nullopt;
}

bool is_nash_stable(const Partition& partition, const NetworkGraph& graph,
                    const ObjectiveParams& params) {
  return !nash_witness(partition, graph, params).has_value();
}

}  // namespace coalform
