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

#include "coalform/sim_config.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace coalform {

Algorithm parse_algorithm(const std::string& tag) {
  if (tag == "dca") return Algorithm::Dca;
  if (tag == "rloc" || tag == "greedy-unilateral") return Algorithm::Rloc;
  if (tag == "mstcfa" || tag == "mst-cfa") return Algorithm::MstCfa;
  throw std::invalid_argument("unknown algorithm tag: " + tag);
}

std::string algorithm_tag(Algorithm a) {
  switch (a) {
    case Algorithm::Dca: return "dca";
    case Algorithm::Rloc: return "rloc";
    case Algorithm::MstCfa: return "mstcfa";
  }
  return "?";
}

std::string algorithm_display_name(Algorithm a) {
  switch (a) {
    case Algorithm::Dca: return "DCA";
    case Algorithm::Rloc: return "RLOC";
    case Algorithm::MstCfa: return "MST-CFA";
  }
  return "?";
}

InitMode parse_init_mode(const std::string& tag) {
  if (tag == "none") return InitMode::None;
  if (tag == "cabp" || tag == "ca-bp") return InitMode::CaBp;
  throw std::invalid_argument("unknown init mode: " + tag);
}

std::string init_mode_tag(InitMode m) { return m == InitMode::None ? "none" : "cabp"; }

void SimConfig::validate() const {
  if (node_counts.empty()) throw std::invalid_argument("config: node_counts must not be empty");
  for (int n : node_counts) {
    if (n < 2) throw std::invalid_argument("config: each node count must be at least 2");
  }
  if (runs < 1) throw std::invalid_argument("config: runs must be at least 1");
  if (slots < 1) throw std::invalid_argument("config: slots must be at least 1");
  if (dt <= 0.0) throw std::invalid_argument("config: dt must be positive");
  if (algorithms.empty()) throw std::invalid_argument("config: algorithms must not be empty");
  for (const std::string& a : algorithms) parse_algorithm(a);
  parse_init_mode(init);
  scenario_params(node_counts.front()).validate();
  ObjectiveParams ob = objective_base();
  ob.chi_max = 1.0;
  ob.e_max = 1.0;
  ob.validate();
  learning_params().validate();
  if (bandwidth_hz <= 0.0) throw std::invalid_argument("config: bandwidth must be positive");
  if (wavelength_m <= 0.0) throw std::invalid_argument("config: wavelength must be positive");
  if (alpha_l <= 0.0) throw std::invalid_argument("config: alpha_l must be positive");
}

ScenarioParams SimConfig::scenario_params(int n) const {
  ScenarioParams sp;
  sp.n = n;
  sp.area_l = area_l;
  sp.prp_rsu = prp_rsu;
  sp.d_ref_min = d_ref_min;
  sp.d_ref_max = d_ref_max;
  sp.v_ref_min = v_ref_min;
  sp.v_ref_max = v_ref_max;
  sp.rsu_range_factor = rsu_range_factor;
  return sp;
}

ChannelParams SimConfig::channel_params() const {
  ChannelParams ch;
  ch.p_t_dbm = p_t_dbm;
  ch.g0_dbi = g0_dbi;
  ch.bandwidth_hz = bandwidth_hz;
  ch.n0_dbm_per_mhz = n0_dbm_per_mhz;
  ch.alpha_l = alpha_l;
  ch.wavelength_m = wavelength_m;
  ch.interference_on = interference;
  ch.fading_on = fading;
  return ch;
}

ObjectiveParams SimConfig::objective_base() const {
  ObjectiveParams ob;
  ob.zeta = zeta;
  ob.beta = beta;
  ob.alpha = alpha;
  ob.v_intra = v_intra;
  ob.v_inter = v_inter;
  ob.n_max = n_max;
  ob.d_max = d_max;
  return ob;
}

LearningParams SimConfig::learning_params() const {
  LearningParams lp;
  lp.epsilon0 = eps0;
  lp.decay = eps_decay;
  lp.floor = eps_floor;
  lp.greedy = greedy;
  return lp;
}

namespace {

const char* const kKeys[] = {
    "area_l",     "node_counts",  "prp_rsu",   "d_ref_min",  "d_ref_max",      "v_ref_min",
    "v_ref_max",  "rsu_range_factor", "p_t_dbm", "g0_dbi",   "bandwidth_hz",   "n0_dbm_per_mhz",
    "alpha_l",    "wavelength_m", "interference", "fading",  "zeta",           "beta",
    "alpha",      "v_intra",      "v_inter",   "n_max",      "d_max",          "slots",
    "mobility",   "dt",           "eps0",      "eps_decay",  "eps_floor",      "greedy",
    "seed",       "runs",         "algorithms", "init"};

}  // namespace

void to_json(nlohmann::json& j, const SimConfig& c) {
  j = nlohmann::json{{"area_l", c.area_l},
                     {"node_counts", c.node_counts},
                     {"prp_rsu", c.prp_rsu},
                     {"d_ref_min", c.d_ref_min},
                     {"d_ref_max", c.d_ref_max},
                     {"v_ref_min", c.v_ref_min},
                     {"v_ref_max", c.v_ref_max},
                     {"rsu_range_factor", c.rsu_range_factor},
                     {"p_t_dbm", c.p_t_dbm},
                     {"g0_dbi", c.g0_dbi},
                     {"bandwidth_hz", c.bandwidth_hz},
                     {"n0_dbm_per_mhz", c.n0_dbm_per_mhz},
                     {"alpha_l", c.alpha_l},
                     {"wavelength_m", c.wavelength_m},
                     {"interference", c.interference},
                     {"fading", c.fading},
                     {"zeta", c.zeta},
                     {"beta", c.beta},
                     {"alpha", c.alpha},
                     {"v_intra", c.v_intra},
                     {"v_inter", c.v_inter},
                     {"n_max", c.n_max},
                     {"d_max", c.d_max},
                     {"slots", c.slots},
                     {"mobility", c.mobility},
                     {"dt", c.dt},
                     {"eps0", c.eps0},
                     {"eps_decay", c.eps_decay},
                     {"eps_floor", c.eps_floor},
                     {"greedy", c.greedy},
                     {"seed", c.seed},
                     {"runs", c.runs},
                     {"algorithms", c.algorithms},
                     {"init", c.init}};
}

void from_json(const nlohmann::json& j, SimConfig& c) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : kKeys) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw std::invalid_argument("config: unknown key '" + it.key() + "'");
  }
  c = SimConfig{};
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).template get<std::decay_t<decltype(field)>>();
  };
  get("area_l", c.area_l);
  get("node_counts", c.node_counts);
  get("prp_rsu", c.prp_rsu);
  get("d_ref_min", c.d_ref_min);
  get("d_ref_max", c.d_ref_max);
  get("v_ref_min", c.v_ref_min);
  get("v_ref_max", c.v_ref_max);
  get("rsu_range_factor", c.rsu_range_factor);
  get("p_t_dbm", c.p_t_dbm);
  get("g0_dbi", c.g0_dbi);
  get("bandwidth_hz", c.bandwidth_hz);
  get("n0_dbm_per_mhz", c.n0_dbm_per_mhz);
  get("alpha_l", c.alpha_l);
  get("wavelength_m", c.wavelength_m);
  get("interference", c.interference);
  get("fading", c.fading);
  get("zeta", c.zeta);
  get("beta", c.beta);
  get("alpha", c.alpha);
  get("v_intra", c.v_intra);
  get("v_inter", c.v_inter);
  get("n_max", c.n_max);
  get("d_max", c.d_max);
  get("slots", c.slots);
  get("mobility", c.mobility);
  get("dt", c.dt);
  get("eps0", c.eps0);
  get("eps_decay", c.eps_decay);
  get("eps_floor", c.eps_floor);
  get("greedy", c.greedy);
  get("seed", c.seed);
  get("runs", c.runs);
  get("algorithms", c.algorithms);
  get("init", c.init);
}

uint64_t config_hash(const SimConfig& cfg) {
  const nlohmann::json j = cfg;
  const std::string dump = j.dump();  // object keys are sorted
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash_hex(const SimConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

void save_config(const std::filesystem::path& path, const SimConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_config: cannot open " + path.string());
  const nlohmann::json j = cfg;
  out << j.dump(2) << '\n';
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config: cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return j.get<SimConfig>();
}

}  // namespace coalform
