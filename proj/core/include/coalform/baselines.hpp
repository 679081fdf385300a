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

#include "coalform/game.hpp"

namespace coalform {

/// Lowest-ID bootstrap clustering: repeatedly the lowest-id unclustered node
/// becomes a head and absorbs its unclustered one-hop neighbors, so every
/// multi-covered node ends up with the lowest-id head it neighbors. Clusters
/// beyond n_max drop their highest-id members back to singletons so the
/// result starts feasible. Deterministic; uses no randomness.
Partition ca_bp_init(const NetworkGraph& graph, const ObjectiveParams& params);

/// Unilateral-join-only dynamic with deterministic take-best acceptance: the
/// run() scheduler in greedy mode restricted to the join catalog.
void greedy_unilateral(EngineState& state, GraphSequence& seq, const ObjectiveParams& params,
                       int slots);

struct MstIterationRecord {
  int iteration = 0;
  double g1 = 0.0;
  double chi_total = 0.0;
  double e_total = 0.0;
  int m = 0;
  double gain = 0.0;
};

/// Centralized merge/split/transfer search. Starting from singletons (or the
/// given initial partition), repeatedly applies the single best improving
/// operation among feasible merges of adjacent coalitions, single-member
/// splits, and single-node transfers, re-picking affected heads to maximize
/// coalition value; halts when nothing improves. Every post-operation
/// coalition must stay feasible.
Partition mst_cfa(const NetworkGraph& graph, const ObjectiveParams& params,
                  const Partition* initial = nullptr,
                  std::vector<MstIterationRecord>* trace = nullptr);

}  // namespace coalform
