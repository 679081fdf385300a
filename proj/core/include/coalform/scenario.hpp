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
#include <filesystem>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "coalform/net_model.hpp"
#include "coalform/types.hpp"

namespace coalform {

struct ScenarioParams {
  int n = 100;
  double area_l = 5000.0;       // square side, meters
  double prp_rsu = 0.1;         // fraction of nodes that are RSUs
  double d_ref_min = 200.0;     // vehicle communication-range interval
  double d_ref_max = 300.0;
  double v_ref_min = 20.0;      // vehicle speed interval, m/s
  double v_ref_max = 30.0;
  double rsu_range_factor = 2.0;
  void validate() const;  // throws std::invalid_argument
};

/// Places n nodes i.i.d. uniform on [0, L]^2. The first floor(prp_rsu * n)
/// ids are RSUs (stationary, rsu_range_factor times the sampled range);
/// the rest are vehicles with uniform speed and heading. Deterministic for a
/// fixed seed: each node consumes draws in the order x, y, range, then for
/// vehicles speed and heading.
std::vector<Node> generate_scenario(const ScenarioParams& params, uint64_t seed);

/// Advances vehicles by pos += vel * dt and reflects both position and
/// velocity at the area boundary. RSUs do not move.
std::vector<Node> step_mobility(const std::vector<Node>& nodes, double dt, double area_l);

/// Scenario snapshot, exported/imported as JSON for golden tests and
/// cross-run reproducibility.
struct ScenarioSnapshot {
  uint64_t seed = 0;
  ChannelParams channel;
  std::vector<Node> nodes;
  friend bool operator==(const ScenarioSnapshot&, const ScenarioSnapshot&) = default;
};

void to_json(nlohmann::json& j, const ScenarioSnapshot& s);
void from_json(const nlohmann::json& j, ScenarioSnapshot& s);
void save_scenario(const std::filesystem::path& path, const ScenarioSnapshot& s);
ScenarioSnapshot load_scenario(const std::filesystem::path& path);

/// Owns a node snapshot and its communication graph, advancing both one time
/// slot at a time when mobility is enabled. With fading on, gains re-draw
/// from a slot-derived seed each rebuild.
class GraphSequence {
 public:
  GraphSequence(std::vector<Node> nodes, ChannelParams ch, bool mobility, double dt,
                double area_l, uint64_t seed);

  const NetworkGraph& current() const { return graph_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  bool mobility_enabled() const { return mobility_; }
  int slot() const { return slot_; }

  /// Steps mobility and rebuilds the graph. No-op when mobility is disabled.
  void advance();

 private:
  std::vector<Node> nodes_;
  ChannelParams ch_;
  bool mobility_ = false;
  double dt_ = 1.0;
  double area_l_ = 0.0;
  uint64_t seed_ = 0;
  int slot_ = 0;
  NetworkGraph graph_;
};

}  // namespace coalform
