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

#include "coalform/scoring.hpp"

#include <algorithm>
#include <functional>

namespace coalform {

namespace {
constexpr int kRebuildEvery = 256;  // keeps cumulative float drift well under kMinGain
}

void PartitionScores::rebuild(const Partition& partition, const NetworkGraph& graph,
                              const ObjectiveParams& params) {
  const int m = partition.coalition_count();
  const std::vector<NodeId> heads = partition.heads();
  values_.resize(m);
  feasible_.resize(m);
  phi_ = 0.0;
  for (int i = 0; i < m; ++i) {
    const Coalition& c = partition.coalition(i);
    feasible_[i] = feasible(c, graph, params) ? 1 : 0;
    values_[i] = coalition_value_in_context(c.members, c.head, heads, m, graph, params);
    phi_ += values_[i];
  }
  commits_since_rebuild_ = 0;
}

PartitionScores::Eval PartitionScores::evaluate(const Partition& partition,
                                                const PartitionEdit& edit,
                                                const NetworkGraph& graph,
                                                const ObjectiveParams& params) const {
  Eval ev;
  const int m_pre = partition.coalition_count();
  ev.m_post = m_pre - static_cast<int>(edit.removed.size()) + static_cast<int>(edit.added.size());

  std::vector<uint8_t> is_removed(m_pre, 0);
  for (int r : edit.removed) is_removed[r] = 1;

  std::vector<NodeId> heads_post;
  heads_post.reserve(ev.m_post);
  for (int i = 0; i < m_pre; ++i) {
    if (!is_removed[i]) heads_post.push_back(partition.coalition(i).head);
  }
  for (const Coalition& a : edit.added) heads_post.push_back(a.head);

  std::vector<NodeId> removed_heads, added_heads;
  for (int r : edit.removed) removed_heads.push_back(partition.coalition(r).head);
  for (const Coalition& a : edit.added) added_heads.push_back(a.head);
  std::sort(removed_heads.begin(), removed_heads.end());
  std::sort(added_heads.begin(), added_heads.end());
  std::vector<NodeId> h_add, h_rem;
  std::set_difference(added_heads.begin(), added_heads.end(), removed_heads.begin(),
                      removed_heads.end(), std::back_inserter(h_add));
  std::set_difference(removed_heads.begin(), removed_heads.end(), added_heads.begin(),
                      added_heads.end(), std::back_inserter(h_rem));

  double local = 0.0;
  for (const Coalition& a : edit.added) {
    const bool f = feasible_members(a.members, graph, params);
    const double v =
        coalition_value_in_context(a.members, a.head, heads_post, ev.m_post, graph, params);
    ev.added_feasible.push_back(f ? 1 : 0);
    ev.added_values.push_back(v);
    if (!f) ev.all_added_feasible = false;
    if (v <= 0.0) ev.all_added_positive = false;
    local += v;
  }
  for (int r : edit.removed) local -= values_[r];

  // Spill-over onto untouched feasible coalitions: the overhead share moves
  // with the coalition count, the head-to-head capacity sums with the head
  // set. Both vanish when the edit changes neither.
  ev.unaffected_delta.assign(m_pre, 0.0);
  double correction = 0.0;
  const bool m_changed = ev.m_post != m_pre;
  if (m_changed || !h_add.empty() || !h_rem.empty()) {
    const double de = m_changed
                          ? params.zeta * ((1.0 / ev.m_post - 1.0 / m_pre) -
                                           params.v_inter * (ev.m_post - m_pre) / params.e_max) *
                                params.value_scale
                          : 0.0;
    const double chi_coef =
        (1.0 - params.zeta) * params.beta / params.chi_max * params.value_scale;
    for (int i = 0; i < m_pre; ++i) {
      if (is_removed[i] || !feasible_[i]) continue;
      double d = de;
      const NodeId h = partition.coalition(i).head;
      for (NodeId j : h_add) d += chi_coef * graph.kappa(h, j, params.alpha);
      for (NodeId j : h_rem) d -= chi_coef * graph.kappa(h, j, params.alpha);
      ev.unaffected_delta[i] = d;
      correction += d;
    }
  }
  ev.gain = local + correction;
  return ev;
}

void PartitionScores::commit(Partition& partition, const PartitionEdit& edit, const Eval& eval,
                             const NetworkGraph& graph, const ObjectiveParams& params) {
  for (size_t i = 0; i < eval.unaffected_delta.size(); ++i) values_[i] += eval.unaffected_delta[i];

  std::vector<int> removed = edit.removed;
  std::sort(removed.begin(), removed.end(), std::greater<int>());
  for (int idx : removed) {
    values_[idx] = values_.back();
    values_.pop_back();
    feasible_[idx] = feasible_.back();
    feasible_.pop_back();
  }
  for (size_t k = 0; k < edit.added.size(); ++k) {
    values_.push_back(eval.added_values[k]);
    feasible_.push_back(eval.added_feasible[k]);
  }
  phi_ += eval.gain;
  partition.apply(edit);

  if (++commits_since_rebuild_ >= kRebuildEvery) rebuild(partition, graph, params);
}

}  // namespace coalform
