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

#include <vector>

#include "coalform/objective.hpp"

namespace coalform {

/// Gains below this threshold are treated as non-positive. Guards the
/// strictly-increasing-potential argument against float rounding on
/// symmetric instances, where a true zero gain can round to +-1e-17 and a
/// pair of "improving" inverse operations would cycle forever.
inline constexpr double kMinGain = 1e-12;

/// Per-coalition values and the potential (sum of coalition values) of one
/// partition, kept in sync through edits. An edit's gain is the exact
/// potential difference: local value changes of the touched coalitions plus
/// the spill-over onto every other feasible coalition when the edit changes
/// the coalition count (overhead shares) or the head set (head-to-head
/// capacity sums).
class PartitionScores {
 public:
  void rebuild(const Partition& partition, const NetworkGraph& graph,
               const ObjectiveParams& params);

  double phi() const { return phi_; }
  double value(int coalition_idx) const { return values_[coalition_idx]; }
  bool coalition_feasible(int coalition_idx) const { return feasible_[coalition_idx] != 0; }

  struct Eval {
    double gain = 0.0;
    int m_post = 0;
    bool all_added_positive = true;  // every added coalition has v > 0
    bool all_added_feasible = true;
    std::vector<double> added_values;
    std::vector<uint8_t> added_feasible;
    std::vector<double> unaffected_delta;  // by pre-edit index; 0 for removed
  };

  /// Scores an edit without applying it.
  Eval evaluate(const Partition& partition, const PartitionEdit& edit,
                const NetworkGraph& graph, const ObjectiveParams& params) const;

  /// Applies the edit to the partition and folds the evaluation into the
  /// cached values. Periodically refreshes from scratch to stop float drift.
  void commit(Partition& partition, const PartitionEdit& edit, const Eval& eval,
              const NetworkGraph& graph, const ObjectiveParams& params);

 private:
  std::vector<double> values_;
  std::vector<uint8_t> feasible_;
  double phi_ = 0.0;
  int commits_since_rebuild_ = 0;
};

}  // namespace coalform
