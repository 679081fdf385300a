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

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "coalform/types.hpp"

namespace coalform {

/// A coalition (cluster): a non-empty member set with exactly one head.
struct Coalition {
  NodeId head = -1;
  std::vector<NodeId> members;  // sorted ascending, contains head
  uint64_t uid = 0;             // stable identity across index moves; assigned by Partition

  bool contains(NodeId id) const;
  int size() const { return static_cast<int>(members.size()); }
};

/// Replaces the coalitions at `removed` (indices into the current partition)
/// with `added`. Removal happens in descending index order via swap-and-pop,
/// then additions append in order; PartitionScores mirrors the same sequence.
struct PartitionEdit {
  std::vector<int> removed;
  std::vector<Coalition> added;
};

/// Disjoint coalitions covering all N nodes, each with exactly one head.
class Partition {
 public:
  Partition() = default;
  Partition(int n, std::vector<Coalition> coalitions);  // validates

  static Partition singletons(int n);

  int node_count() const { return n_; }
  int coalition_count() const { return static_cast<int>(coalitions_.size()); }
  const Coalition& coalition(int idx) const { return coalitions_[idx]; }
  const std::vector<Coalition>& coalitions() const { return coalitions_; }
  int index_of(NodeId id) const { return index_of_[id]; }
  const Coalition& coalition_of(NodeId id) const { return coalitions_[index_of_[id]]; }

  /// Heads in coalition-index order.
  std::vector<NodeId> heads() const;

  /// Index of the coalition with the given uid, or -1.
  int find_uid(uint64_t uid) const;

  void apply(const PartitionEdit& edit);

  /// Throws std::logic_error when any invariant is broken.
  void validate() const;

 private:
  void reindex();
  uint64_t claim_uid() { return next_uid_++; }

  int n_ = 0;
  std::vector<Coalition> coalitions_;
  std::vector<int> index_of_;
  uint64_t next_uid_ = 1;
};

void to_json(nlohmann::json& j, const Partition& p);
/// Requires the serialized coalition list to cover [0, n) for the embedded n.
void from_json(const nlohmann::json& j, Partition& p);

}  // namespace coalform
