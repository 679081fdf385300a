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

#include <functional>
#include <optional>
#include <vector>

#include "coalform/game.hpp"
#include "coalform/objective.hpp"

namespace coalform {

struct EnumeratedPartition {
  Partition partition;
  double score = 0.0;   // global objective
  bool feasible = false;  // every coalition satisfies the constraints
};

/// Exhaustive enumeration of every set partition of the nodes crossed with
/// every head assignment (one head per block), each scored by the objective.
/// Requires graph.size() <= 10; throws std::invalid_argument beyond that.
std::vector<EnumeratedPartition> enumerate_all(const NetworkGraph& graph,
                                               const ObjectiveParams& params);

/// Streaming variant for callers that only fold over the enumeration.
void for_each_partition(const NetworkGraph& graph, const ObjectiveParams& params,
                        const std::function<void(const EnumeratedPartition&)>& visit);

/// Highest-scoring fully feasible partition, or nullopt if none (never the
/// case: singletons are always feasible).
std::optional<EnumeratedPartition> best_feasible_partition(const NetworkGraph& graph,
                                                           const ObjectiveParams& params);

/// Independent Nash-stability check: reconstructs every head-election,
/// switch, replace and join from first principles over all coalition pairs
/// (no neighbor-cluster shortcuts), scores each by rebuilding the whole
/// post-operation partition from scratch, and reports a positive-gain
/// admissible operation if one exists. Shares only the objective primitives
/// with the game engine. Requires graph.size() <= 12.
std::optional<OperationProposal> verify_nash_witness(const Partition& partition,
                                                     const NetworkGraph& graph,
                                                     const ObjectiveParams& params);
bool verify_nash(const Partition& partition, const NetworkGraph& graph,
                 const ObjectiveParams& params);

}  // namespace coalform
