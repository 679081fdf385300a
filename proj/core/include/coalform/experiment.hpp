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

#include <filesystem>
#include <string>
#include <vector>

#include "coalform/baselines.hpp"
#include "coalform/io.hpp"
#include "coalform/sim_config.hpp"

namespace coalform {

struct RunRecord {
  int node_count = 0;
  Algorithm algorithm = Algorithm::Dca;
  int run_idx = 0;
  uint64_t scenario_seed = 0;
  uint64_t engine_seed = 0;
  double final_g1 = 0.0;
  double chi_total = 0.0;
  double e_total = 0.0;
  int slots_to_fixed_point = 0;  // 1 + last slot that applied an operation
  int ops_total = 0;
  double wall_ms = 0.0;  // in-memory only; never serialized
};

struct AggregateRow {
  int node_count = 0;
  Algorithm algorithm = Algorithm::Dca;
  int runs = 0;
  double r_mean = 0.0;
  double r_best = 0.0;
  double r_worst = 0.0;
  double chi_mean = 0.0;
  double e_mean = 0.0;
  double slots_mean = 0.0;
};

struct ExperimentResult {
  SimConfig cfg;
  std::string cfg_hash;
  std::vector<RunRecord> runs;
  std::vector<AggregateRow> aggregate;
};

/// Executes cfg.runs independent seeded runs for every node count and
/// algorithm in the plan. Scenario seeds depend only on (master seed, node
/// count, run index), so algorithms and init modes compare on identical
/// scenarios. Emits per-run trace CSVs and final-partition JSONs under
/// out_dir/runs/, plus config.json, aggregate.csv, table.txt and per-node
/// convergence curve CSVs. Runs execute on a worker pool (threads = 0 picks
/// the hardware count); outputs do not depend on the thread count.
ExperimentResult run_experiment(const SimConfig& cfg, const std::filesystem::path& out_dir,
                                int threads = 0);

/// One run, exactly as run_experiment would execute it; files are written
/// only if dir is non-empty.
RunRecord run_single(const SimConfig& cfg, int node_count, Algorithm algorithm, int run_idx,
                     const std::filesystem::path& dir, const std::string& cfg_hash);

std::vector<AggregateRow> aggregate_records(const std::vector<RunRecord>& records);

/// Re-derives per-run records from the emitted trace/partition files.
std::vector<RunRecord> load_run_records(const std::filesystem::path& out_dir);

/// Plain-text table with columns Node num, Algorithm, R_bar, Best, Worst,
/// chi_total, E_total.
std::string render_table(const std::vector<AggregateRow>& rows);

void write_aggregate_csv(const std::filesystem::path& path, const Provenance& header,
                         const std::vector<AggregateRow>& rows);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

/// Mean G1 per slot across runs (raw and normalized by the final mean) for
/// the distributed algorithms; the centralized search is excluded. Runs that
/// stopped early carry their final value forward.
void write_curves(const SimConfig& cfg, const std::string& cfg_hash,
                  const std::filesystem::path& out_dir);

std::filesystem::path run_dir(const std::filesystem::path& out_dir, int node_count,
                              Algorithm algorithm);

}  // namespace coalform
