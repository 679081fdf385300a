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

#include "coalform/partition.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace coalform {

bool Coalition::contains(NodeId id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

Partition::Partition(int n, std::vector<Coalition> coalitions)
    : n_(n), coalitions_(std::move(coalitions)) {
  for (Coalition& c : coalitions_) {
    std::sort(c.members.begin(), c.members.end());
    if (c.uid == 0) c.uid = claim_uid();
    next_uid_ = std::max(next_uid_, c.uid + 1);
  }
  reindex();
  validate();
}

Partition Partition::singletons(int n) {
  std::vector<Coalition> cs;
  cs.reserve(n);
  for (NodeId id = 0; id < n; ++id) cs.push_back(Coalition{id, {id}, 0});
  return Partition(n, std::move(cs));
}

std::vector<NodeId> Partition::heads() const {
  std::vector<NodeId> hs;
  hs.reserve(coalitions_.size());
  for (const Coalition& c : coalitions_) hs.push_back(c.head);
  return hs;
}

int Partition::find_uid(uint64_t uid) const {
  for (int i = 0; i < coalition_count(); ++i) {
    if (coalitions_[i].uid == uid) return i;
  }
  return -1;
}

void Partition::apply(const PartitionEdit& edit) {
  std::vector<int> removed = edit.removed;
  std::sort(removed.begin(), removed.end(), std::greater<int>());
  for (int idx : removed) {
    coalitions_[idx] = std::move(coalitions_.back());
    coalitions_.pop_back();
  }
  for (const Coalition& c : edit.added) {
    Coalition copy = c;
    std::sort(copy.members.begin(), copy.members.end());
    if (copy.uid == 0) copy.uid = claim_uid();
    next_uid_ = std::max(next_uid_, copy.uid + 1);
    coalitions_.push_back(std::move(copy));
  }
  reindex();
}

void Partition::reindex() {
  index_of_.assign(n_, -1);
  for (int ci = 0; ci < coalition_count(); ++ci) {
    for (NodeId id : coalitions_[ci].members) {
      if (id < 0 || id >= n_) throw std::logic_error("partition: member id out of range");
      if (index_of_[id] != -1) throw std::logic_error("partition: coalitions overlap");
      index_of_[id] = ci;
    }
  }
}

void Partition::validate() const {
  for (NodeId id = 0; id < n_; ++id) {
    if (index_of_[id] < 0) throw std::logic_error("partition: node not covered");
  }
  for (const Coalition& c : coalitions_) {
    if (c.members.empty()) throw std::logic_error("partition: empty coalition");
    if (!c.contains(c.head)) throw std::logic_error("partition: head is not a member");
    for (size_t k = 1; k < c.members.size(); ++k) {
      if (c.members[k - 1] >= c.members[k])
        throw std::logic_error("partition: members not strictly sorted");
    }
  }
}

void to_json(nlohmann::json& j, const Partition& p) {
  nlohmann::json cs = nlohmann::json::array();
  for (const Coalition& c : p.coalitions()) {
    cs.push_back({{"head", c.head}, {"members", c.members}});
  }
  j = nlohmann::json{{"n", p.node_count()}, {"coalitions", cs}};
}

void from_json(const nlohmann::json& j, Partition& p) {
  const int n = j.at("n").get<int>();
  std::vector<Coalition> cs;
  for (const auto& cj : j.at("coalitions")) {
    Coalition c;
    c.head = cj.at("head").get<NodeId>();
    c.members = cj.at("members").get<std::vector<NodeId>>();
    cs.push_back(std::move(c));
  }
  p = Partition(n, std::move(cs));
}

}  // namespace coalform
