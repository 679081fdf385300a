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

#include "coalform/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace coalform {

namespace fs = std::filesystem;

std::filesystem::path run_dir(const std::filesystem::path& out_dir, int node_count,
                              Algorithm algorithm) {
  return out_dir / "runs" / ("n" + std::to_string(node_count)) / algorithm_tag(algorithm);
}

namespace {

std::string run_stem(int run_idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "run_%03d", run_idx);
  return buf;
}

uint64_t scenario_seed_for(const SimConfig& cfg, int node_count, int run_idx) {
  return mix_seed(cfg.seed, static_cast<uint64_t>(node_count) * 1000003ULL +
                                static_cast<uint64_t>(run_idx));
}

uint64_t engine_seed_for(uint64_t scenario_seed, Algorithm alg, InitMode init) {
  return mix_seed(scenario_seed,
                  16ULL * (static_cast<uint64_t>(alg) + 1) + static_cast<uint64_t>(init) + 1);
}

int slots_to_fixed_point(const std::vector<MetricsRecord>& trace) {
  int last = 0;
  for (const MetricsRecord& r : trace) {
    if (r.ops_applied > 0) last = r.slot + 1;
  }
  return last;
}

}  // namespace

RunRecord run_single(const SimConfig& cfg, int node_count, Algorithm algorithm, int run_idx,
                     const std::filesystem::path& dir, const std::string& cfg_hash) {
  const InitMode init = parse_init_mode(cfg.init);
  RunRecord rec;
  rec.node_count = node_count;
  rec.algorithm = algorithm;
  rec.run_idx = run_idx;
  rec.scenario_seed = scenario_seed_for(cfg, node_count, run_idx);
  rec.engine_seed = engine_seed_for(rec.scenario_seed, algorithm, init);

  const std::vector<Node> nodes =
      generate_scenario(cfg.scenario_params(node_count), rec.scenario_seed);
  GraphSequence seq(nodes, cfg.channel_params(), cfg.mobility, cfg.dt, cfg.area_l,
                    mix_seed(rec.scenario_seed, 0xFADEULL));
  ObjectiveParams params = derive_objective_params(cfg.objective_base(), seq.current());
  Partition initial = init == InitMode::CaBp ? ca_bp_init(seq.current(), params)
                                             : Partition::singletons(node_count);

  std::vector<MetricsRecord> trace;
  Partition final_partition;
  const auto t0 = std::chrono::steady_clock::now();
  switch (algorithm) {
    case Algorithm::Dca: {
      EngineState st = make_engine_state(std::move(initial), seq.current(), params,
                                         rec.engine_seed);
      run(st, seq, params, cfg.learning_params(), cfg.slots);
      trace = std::move(st.trace);
      final_partition = std::move(st.partition);
      break;
    }
    case Algorithm::Rloc: {
      EngineState st = make_engine_state(std::move(initial), seq.current(), params,
                                         rec.engine_seed);
      greedy_unilateral(st, seq, params, cfg.slots);
      trace = std::move(st.trace);
      final_partition = std::move(st.partition);
      break;
    }
    case Algorithm::MstCfa: {
      std::vector<MstIterationRecord> mst_trace;
      final_partition = mst_cfa(seq.current(), params, &initial, &mst_trace);
      for (const MstIterationRecord& it : mst_trace)
        trace.push_back({it.iteration, it.g1, it.chi_total, it.e_total, it.m, 1, 0.0});
      break;
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  // With mobility the graph evolved; score the final partition on the final
  // graph snapshot.
  if (cfg.mobility) params.chi_max = compute_chi_max(seq.current(), params.alpha);
  const ObjectiveBreakdown b = partition_breakdown(final_partition, seq.current(), params);
  if (trace.empty())
    trace.push_back({0, b.g1, b.chi_intra + b.chi_inter, b.e_intra + b.e_inter,
                     final_partition.coalition_count(), 0, 0.0});
  rec.final_g1 = b.g1;
  rec.chi_total = b.chi_intra + b.chi_inter;
  rec.e_total = b.e_intra + b.e_inter;
  rec.slots_to_fixed_point = slots_to_fixed_point(trace);
  for (const MetricsRecord& r : trace) rec.ops_total += r.ops_applied;

  if (!dir.empty()) {
    Provenance prov{{"config_hash", cfg_hash},
                    {"seed", std::to_string(cfg.seed)},
                    {"scenario_seed", std::to_string(rec.scenario_seed)},
                    {"engine_seed", std::to_string(rec.engine_seed)},
                    {"algorithm", algorithm_tag(algorithm)},
                    {"init", cfg.init},
                    {"nodes", std::to_string(node_count)},
                    {"run", std::to_string(run_idx)}};
    write_trace_csv(dir / (run_stem(run_idx) + ".trace.csv"), TraceFile{prov, trace});
    write_partition_json(dir / (run_stem(run_idx) + ".partition.json"),
                         PartitionFile{prov, final_partition, b});
  }
  return rec;
}

std::vector<AggregateRow> aggregate_records(const std::vector<RunRecord>& records) {
  std::vector<AggregateRow> rows;
  for (const RunRecord& r : records) {
    AggregateRow* row = nullptr;
    for (AggregateRow& existing : rows) {
      if (existing.node_count == r.node_count && existing.algorithm == r.algorithm) {
        row = &existing;
        break;
      }
    }
    if (!row) {
      rows.push_back(AggregateRow{r.node_count, r.algorithm, 0, 0.0,
                                  -std::numeric_limits<double>::infinity(),
                                  std::numeric_limits<double>::infinity(), 0.0, 0.0, 0.0});
      row = &rows.back();
    }
    ++row->runs;
    row->r_mean += r.final_g1;
    row->r_best = std::max(row->r_best, r.final_g1);
    row->r_worst = std::min(row->r_worst, r.final_g1);
    row->chi_mean += r.chi_total;
    row->e_mean += r.e_total;
    row->slots_mean += r.slots_to_fixed_point;
  }
  for (AggregateRow& row : rows) {
    row.r_mean /= row.runs;
    row.chi_mean /= row.runs;
    row.e_mean /= row.runs;
    row.slots_mean /= row.runs;
  }
  std::sort(rows.begin(), rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
    if (a.node_count != b.node_count) return a.node_count < b.node_count;
    return static_cast<int>(a.algorithm) < static_cast<int>(b.algorithm);
  });
  return rows;
}

std::string render_table(const std::vector<AggregateRow>& rows) {
  auto pad = [](std::string s, size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  auto num = [](double v, const char* fmt) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << pad("Node num", 9) << pad("Algorithm", 10) << pad("R_bar", 9) << pad("Best", 9)
      << pad("Worst", 9) << pad("chi_total", 14) << pad("E_total", 14) << '\n';
  for (const AggregateRow& r : rows) {
    out << pad(std::to_string(r.node_count), 9) << pad(algorithm_display_name(r.algorithm), 10)
        << pad(num(r.r_mean, "%.4f"), 9) << pad(num(r.r_best, "%.4f"), 9)
        << pad(num(r.r_worst, "%.4f"), 9) << pad(num(r.chi_mean, "%.6g"), 14)
        << pad(num(r.e_mean, "%.6g"), 14) << '\n';
  }
  return out.str();
}

void write_aggregate_csv(const std::filesystem::path& path, const Provenance& header,
                         const std::vector<AggregateRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_aggregate_csv: cannot open " + path.string());
  out << "# coalform-aggregate v1\n";
  for (const auto& [key, value] : header) out << "# " << key << '=' << value << '\n';
  out << "node_num,algorithm,runs,r_mean,r_best,r_worst,chi_total,e_total,slots_to_fixed_point\n";
  for (const AggregateRow& r : rows) {
    out << csv_row({std::to_string(r.node_count), algorithm_tag(r.algorithm),
                    std::to_string(r.runs), fmt_double(r.r_mean), fmt_double(r.r_best),
                    fmt_double(r.r_worst), fmt_double(r.chi_mean), fmt_double(r.e_mean),
                    fmt_double(r.slots_mean)})
        << '\n';
  }
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_aggregate_csv: cannot open " + path.string());
  std::string line;
  std::vector<AggregateRow> rows;
  bool seen_columns = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_columns) {
      seen_columns = true;  // column header
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 9) throw std::runtime_error("read_aggregate_csv: bad row");
    AggregateRow r;
    r.node_count = std::stoi(f[0]);
    r.algorithm = parse_algorithm(f[1]);
    r.runs = std::stoi(f[2]);
    r.r_mean = std::stod(f[3]);
    r.r_best = std::stod(f[4]);
    r.r_worst = std::stod(f[5]);
    r.chi_mean = std::stod(f[6]);
    r.e_mean = std::stod(f[7]);
    r.slots_mean = std::stod(f[8]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<RunRecord> load_run_records(const std::filesystem::path& out_dir) {
  std::vector<RunRecord> records;
  const fs::path runs_root = out_dir / "runs";
  if (!fs::exists(runs_root)) throw std::runtime_error("load_run_records: no runs/ under " +
                                                       out_dir.string());
  std::vector<fs::path> trace_files;
  for (const auto& entry : fs::recursive_directory_iterator(runs_root)) {
    if (entry.is_regular_file() && entry.path().string().ends_with(".trace.csv"))
      trace_files.push_back(entry.path());
  }
  std::sort(trace_files.begin(), trace_files.end());
  for (const fs::path& path : trace_files) {
    const TraceFile trace = read_trace_csv(path);
    auto get = [&](const std::string& key) -> std::string {
      for (const auto& [k, v] : trace.header) {
        if (k == key) return v;
      }
      throw std::runtime_error("trace missing header key " + key + ": " + path.string());
    };
    RunRecord rec;
    rec.node_count = std::stoi(get("nodes"));
    rec.algorithm = parse_algorithm(get("algorithm"));
    rec.run_idx = std::stoi(get("run"));
    rec.scenario_seed = std::stoull(get("scenario_seed"));
    rec.engine_seed = std::stoull(get("engine_seed"));
    rec.slots_to_fixed_point = slots_to_fixed_point(trace.records);
    for (const MetricsRecord& r : trace.records) rec.ops_total += r.ops_applied;
    // Final objective values come from the partition file, which holds the
    // final-graph breakdown even under mobility.
    fs::path pp = path;
    pp.replace_filename(path.filename().string().substr(0, 7) + ".partition.json");
    const PartitionFile part = read_partition_json(pp);
    rec.final_g1 = part.breakdown.g1;
    rec.chi_total = part.breakdown.chi_intra + part.breakdown.chi_inter;
    rec.e_total = part.breakdown.e_intra + part.breakdown.e_inter;
    records.push_back(rec);
  }
  return records;
}

void write_curves(const SimConfig& cfg, const std::string& cfg_hash,
                  const std::filesystem::path& out_dir) {
  for (int n : cfg.node_counts) {
    std::vector<std::pair<std::string, std::vector<double>>> curves;
    for (const std::string& alg_tag_str : cfg.algorithms) {
      const Algorithm alg = parse_algorithm(alg_tag_str);
      if (alg == Algorithm::MstCfa) continue;  // centralized iterations are not time slots
      std::vector<double> mean(cfg.slots, 0.0);
      int count = 0;
      const fs::path dir = run_dir(out_dir, n, alg);
      if (!fs::exists(dir)) continue;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().string().ends_with(".trace.csv")) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const fs::path& f : files) {
        const TraceFile trace = read_trace_csv(f);
        double last = 0.0;
        for (int t = 0; t < cfg.slots; ++t) {
          if (t < static_cast<int>(trace.records.size())) last = trace.records[t].g1;
          mean[t] += last;  // early-stopped runs carry their final value
        }
        ++count;
      }
      if (count == 0) continue;
      for (double& v : mean) v /= count;
      curves.emplace_back(alg_tag_str, std::move(mean));
    }
    if (curves.empty()) continue;
    std::ofstream out(out_dir / ("curve_n" + std::to_string(n) + ".csv"), std::ios::binary);
    out << "# coalform-curve v1\n";
    out << "# config_hash=" << cfg_hash << '\n';
    out << "# seed=" << cfg.seed << '\n';
    out << "# nodes=" << n << '\n';
    out << "slot";
    for (const auto& [tag, _] : curves) out << ',' << tag << ',' << tag << "_norm";
    out << '\n';
    for (int t = 0; t < cfg.slots; ++t) {
      out << t;
      for (const auto& [tag, mean] : curves) {
        const double final_mean = mean.back();
        out << ',' << fmt_double(mean[t]) << ','
            << fmt_double(final_mean != 0.0 ? mean[t] / final_mean : 0.0);
      }
      out << '\n';
    }
  }
}

ExperimentResult run_experiment(const SimConfig& cfg, const std::filesystem::path& out_dir,
                                int threads) {
  cfg.validate();
  ExperimentResult result;
  result.cfg = cfg;
  result.cfg_hash = config_hash_hex(cfg);

  fs::create_directories(out_dir);
  save_config(out_dir / "config.json", cfg);

  struct Job {
    int node_count;
    Algorithm algorithm;
    int run_idx;
    fs::path dir;
  };
  std::vector<Job> jobs;
  for (int n : cfg.node_counts) {
    for (const std::string& alg_str : cfg.algorithms) {
      const Algorithm alg = parse_algorithm(alg_str);
      const fs::path dir = run_dir(out_dir, n, alg);
      fs::create_directories(dir);
      for (int r = 0; r < cfg.runs; ++r) jobs.push_back({n, alg, r, dir});
    }
  }

  result.runs.resize(jobs.size());
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job& job = jobs[k];
      result.runs[k] =
          run_single(cfg, job.node_count, job.algorithm, job.run_idx, job.dir, result.cfg_hash);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  result.aggregate = aggregate_records(result.runs);
  Provenance prov{{"config_hash", result.cfg_hash},
                  {"seed", std::to_string(cfg.seed)},
                  {"init", cfg.init}};
  write_aggregate_csv(out_dir / "aggregate.csv", prov, result.aggregate);
  std::ofstream table(out_dir / "table.txt", std::ios::binary);
  table << "# config_hash=" << result.cfg_hash << " seed=" << cfg.seed << " init=" << cfg.init
        << '\n';
  table << render_table(result.aggregate);
  write_curves(cfg, result.cfg_hash, out_dir);
  return result;
}

}  // namespace coalform
