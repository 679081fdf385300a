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
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "coalform/game.hpp"
#include "coalform/objective.hpp"
#include "coalform/scenario.hpp"

namespace coalform {

enum class Algorithm { Dca, Rloc, MstCfa };
enum class InitMode { None, CaBp };

Algorithm parse_algorithm(const std::string& tag);  // throws std::invalid_argument
std::string algorithm_tag(Algorithm a);             // dca, rloc, mstcfa
std::string algorithm_display_name(Algorithm a);    // DCA, RLOC, MST-CFA
InitMode parse_init_mode(const std::string& tag);   // none, cabp
std::string init_mode_tag(InitMode m);

/// Full experiment configuration: scenario geometry, channel, objective
/// weights, learning schedule, and the experiment plan. JSON round-trip
/// stable; unknown keys are rejected, missing keys keep their defaults.
struct SimConfig {
  // scenario
  double area_l = 5000.0;
  std::vector<int> node_counts = {100};
  double prp_rsu = 0.1;
  double d_ref_min = 200.0;
  double d_ref_max = 300.0;
  double v_ref_min = 20.0;
  double v_ref_max = 30.0;
  double rsu_range_factor = 2.0;
  // channel
  double p_t_dbm = 30.0;
  double g0_dbi = 20.0;
  double bandwidth_hz = 800e6;
  double n0_dbm_per_mhz = -134.0;
  double alpha_l = 2.0;
  double wavelength_m = kDefaultWavelengthM;
  bool interference = false;
  bool fading = false;
  // objective
  double zeta = 0.5;
  double beta = 0.1;
  double alpha = 2.0;
  double v_intra = 1.0;
  double v_inter = 0.2;
  int n_max = 15;
  int d_max = 2;
  // dynamics
  int slots = 500;
  bool mobility = false;
  double dt = 1.0;
  double eps0 = 0.1;
  double eps_decay = 0.98;
  double eps_floor = 1e-3;
  bool greedy = false;
  // experiment plan
  uint64_t seed = 1;
  int runs = 20;
  std::vector<std::string> algorithms = {"dca"};
  std::string init = "none";

  void validate() const;  // throws std::invalid_argument

  ScenarioParams scenario_params(int n) const;
  ChannelParams channel_params() const;
  ObjectiveParams objective_base() const;  // chi_max/e_max still unset
  LearningParams learning_params() const;
};

void to_json(nlohmann::json& j, const SimConfig& cfg);
void from_json(const nlohmann::json& j, SimConfig& cfg);

/// FNV-1a over the canonical (sorted-key) JSON dump.
uint64_t config_hash(const SimConfig& cfg);
std::string config_hash_hex(const SimConfig& cfg);

void save_config(const std::filesystem::path& path, const SimConfig& cfg);
SimConfig load_config(const std::filesystem::path& path);

}  // namespace coalform
