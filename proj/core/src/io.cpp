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

#include "coalform/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace coalform {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += fields[i];
  }
  return row;
}

namespace {

constexpr const char* kTraceColumns = "slot,g1,chi_total,e_total,m,ops_applied,epsilon";

void write_provenance(std::ostream& out, const Provenance& header) {
  for (const auto& [key, value] : header) out << "# " << key << '=' << value << '\n';
}

Provenance read_provenance(std::istream& in, std::string& first_data_line) {
  Provenance header;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw std::runtime_error("malformed provenance line: " + line);
      header.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
    } else {
      first_data_line = line;
      break;
    }
  }
  return header;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const TraceFile& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path.string());
  out << "# coalform-trace v1\n";
  write_provenance(out, trace.header);
  out << kTraceColumns << '\n';
  for (const MetricsRecord& r : trace.records) {
    out << csv_row({std::to_string(r.slot), fmt_double(r.g1), fmt_double(r.chi_total),
                    fmt_double(r.e_total), std::to_string(r.m), std::to_string(r.ops_applied),
                    fmt_double(r.epsilon)})
        << '\n';
  }
}

TraceFile read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_trace_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "# coalform-trace v1")
    throw std::runtime_error("read_trace_csv: bad magic in " + path.string());
  TraceFile trace;
  std::string columns;
  trace.header = read_provenance(in, columns);
  if (columns != kTraceColumns)
    throw std::runtime_error("read_trace_csv: unexpected columns in " + path.string());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 7) throw std::runtime_error("read_trace_csv: bad row in " + path.string());
    MetricsRecord r;
    r.slot = std::stoi(f[0]);
    r.g1 = std::stod(f[1]);
    r.chi_total = std::stod(f[2]);
    r.e_total = std::stod(f[3]);
    r.m = std::stoi(f[4]);
    r.ops_applied = std::stoi(f[5]);
    r.epsilon = std::stod(f[6]);
    trace.records.push_back(r);
  }
  return trace;
}

void write_partition_json(const std::filesystem::path& path, const PartitionFile& file) {
  nlohmann::json j;
  j["format"] = "coalform-partition-v1";
  for (const auto& [key, value] : file.header) j[key] = value;
  j["breakdown"] = {{"chi_intra", file.breakdown.chi_intra},
                    {"chi_inter", file.breakdown.chi_inter},
                    {"e_intra", file.breakdown.e_intra},
                    {"e_inter", file.breakdown.e_inter},
                    {"g1", file.breakdown.g1}};
  nlohmann::json pj = file.partition;
  j["n"] = pj.at("n");
  j["coalitions"] = pj.at("coalitions");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_partition_json: cannot open " + path.string());
  out << j.dump(2) << '\n';
}

PartitionFile read_partition_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_partition_json: cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  if (j.at("format").get<std::string>() != "coalform-partition-v1")
    throw std::runtime_error("read_partition_json: bad format in " + path.string());
  PartitionFile file;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "format" || it.key() == "breakdown" || it.key() == "n" ||
        it.key() == "coalitions")
      continue;
    file.header.emplace_back(it.key(), it.value().get<std::string>());
  }
  const auto& b = j.at("breakdown");
  file.breakdown.chi_intra = b.at("chi_intra").get<double>();
  file.breakdown.chi_inter = b.at("chi_inter").get<double>();
  file.breakdown.e_intra = b.at("e_intra").get<double>();
  file.breakdown.e_inter = b.at("e_inter").get<double>();
  file.breakdown.g1 = b.at("g1").get<double>();
  nlohmann::json pj;
  pj["n"] = j.at("n");
  pj["coalitions"] = j.at("coalitions");
  file.partition = pj.get<Partition>();
  return file;
}

}  // namespace coalform
