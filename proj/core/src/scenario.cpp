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

#include "coalform/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "coalform/rng.hpp"

namespace coalform {

void ScenarioParams::validate() const {
  if (n < 1) throw std::invalid_argument("scenario: n must be at least 1");
  if (area_l <= 0.0) throw std::invalid_argument("scenario: area_l must be positive");
  if (prp_rsu < 0.0 || prp_rsu > 1.0)
    throw std::invalid_argument("scenario: prp_rsu must lie in [0, 1]");
  if (d_ref_min <= 0.0 || d_ref_max < d_ref_min)
    throw std::invalid_argument("scenario: bad communication-range interval");
  if (v_ref_min < 0.0 || v_ref_max < v_ref_min)
    throw std::invalid_argument("scenario: bad speed interval");
  if (rsu_range_factor <= 0.0)
    throw std::invalid_argument("scenario: rsu_range_factor must be positive");
}

std::vector<Node> generate_scenario(const ScenarioParams& params, uint64_t seed) {
  params.validate();
  Rng rng(seed);
  const int n_rsu = static_cast<int>(params.prp_rsu * params.n);
  std::vector<Node> nodes;
  nodes.reserve(params.n);
  for (int id = 0; id < params.n; ++id) {
    Node node;
    node.id = id;
    node.pos.x = rng.uniform(0.0, params.area_l);
    node.pos.y = rng.uniform(0.0, params.area_l);
    const double r = rng.uniform(params.d_ref_min, params.d_ref_max);
    if (id < n_rsu) {
      node.is_rsu = true;
      node.range = r * params.rsu_range_factor;
    } else {
      node.range = r;
      const double speed = rng.uniform(params.v_ref_min, params.v_ref_max);
      const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
      node.vel.x = speed * std::cos(heading);
      node.vel.y = speed * std::sin(heading);
    }
    nodes.push_back(node);
  }
  return nodes;
}

namespace {

void reflect(double& p, double& v, double limit) {
  while (p < 0.0 || p > limit) {
    if (p < 0.0) {
      p = -p;
      v = -v;
    } else {
      p = 2.0 * limit - p;
      v = -v;
    }
  }
}

}  // namespace

std::vector<Node> step_mobility(const std::vector<Node>& nodes, double dt, double area_l) {
  if (dt <= 0.0) throw std::invalid_argument("step_mobility: dt must be positive");
  std::vector<Node> out = nodes;
  for (Node& node : out) {
    if (node.is_rsu) continue;
    node.pos.x += node.vel.x * dt;
    node.pos.y += node.vel.y * dt;
    reflect(node.pos.x, node.vel.x, area_l);
    reflect(node.pos.y, node.vel.y, area_l);
  }
  return out;
}

void to_json(nlohmann::json& j, const ScenarioSnapshot& s) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const Node& n : s.nodes) {
    nodes.push_back({{"id", n.id},
                     {"pos", {n.pos.x, n.pos.y}},
                     {"vel", {n.vel.x, n.vel.y}},
                     {"range", n.range},
                     {"is_rsu", n.is_rsu}});
  }
  j = nlohmann::json{{"format", "coalform-scenario-v1"},
                     {"seed", s.seed},
                     {"channel",
                      {{"p_t_dbm", s.channel.p_t_dbm},
                       {"g0_dbi", s.channel.g0_dbi},
                       {"bandwidth_hz", s.channel.bandwidth_hz},
                       {"n0_dbm_per_mhz", s.channel.n0_dbm_per_mhz},
                       {"alpha_l", s.channel.alpha_l},
                       {"wavelength_m", s.channel.wavelength_m},
                       {"interference_on", s.channel.interference_on},
                       {"fading_on", s.channel.fading_on}}},
                     {"nodes", nodes}};
}

void from_json(const nlohmann::json& j, ScenarioSnapshot& s) {
  s.seed = j.at("seed").get<uint64_t>();
  const auto& ch = j.at("channel");
  s.channel.p_t_dbm = ch.at("p_t_dbm").get<double>();
  s.channel.g0_dbi = ch.at("g0_dbi").get<double>();
  s.channel.bandwidth_hz = ch.at("bandwidth_hz").get<double>();
  s.channel.n0_dbm_per_mhz = ch.at("n0_dbm_per_mhz").get<double>();
  s.channel.alpha_l = ch.at("alpha_l").get<double>();
  s.channel.wavelength_m = ch.at("wavelength_m").get<double>();
  s.channel.interference_on = ch.at("interference_on").get<bool>();
  s.channel.fading_on = ch.at("fading_on").get<bool>();
  s.nodes.clear();
  for (const auto& nj : j.at("nodes")) {
    Node n;
    n.id = nj.at("id").get<NodeId>();
    n.pos.x = nj.at("pos").at(0).get<double>();
    n.pos.y = nj.at("pos").at(1).get<double>();
    n.vel.x = nj.at("vel").at(0).get<double>();
    n.vel.y = nj.at("vel").at(1).get<double>();
    n.range = nj.at("range").get<double>();
    n.is_rsu = nj.at("is_rsu").get<bool>();
    s.nodes.push_back(n);
  }
}

void save_scenario(const std::filesystem::path& path, const ScenarioSnapshot& s) {
  nlohmann::json j = s;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_scenario: cannot open " + path.string());
  out << j.dump(2) << '\n';
}

ScenarioSnapshot load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_scenario: cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return j.get<ScenarioSnapshot>();
}

GraphSequence::GraphSequence(std::vector<Node> nodes, ChannelParams ch, bool mobility,
                             double dt, double area_l, uint64_t seed)
    : nodes_(std::move(nodes)),
      ch_(ch),
      mobility_(mobility),
      dt_(dt),
      area_l_(area_l),
      seed_(seed) {
  graph_ = NetworkGraph::build(nodes_, ch_, mix_seed(seed_, 0));
}

void GraphSequence::advance() {
  if (!mobility_) return;
  ++slot_;
  nodes_ = step_mobility(nodes_, dt_, area_l_);
  graph_ = NetworkGraph::build(nodes_, ch_, mix_seed(seed_, static_cast<uint64_t>(slot_)));
}

}  // namespace coalform
