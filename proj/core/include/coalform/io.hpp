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
#include <map>
#include <string>
#include <vector>

#include "coalform/game.hpp"
#include "coalform/objective.hpp"

namespace coalform {

/// Fixed-format doubles ("%.12g") so emitted files are byte-stable across
/// reruns and re-parse well within 1e-9.
std::string fmt_double(double x);

/// "# key=value" provenance headers shared by all emitted CSV files.
using Provenance = std::vector<std::pair<std::string, std::string>>;

struct TraceFile {
  Provenance header;
  std::vector<MetricsRecord> records;
};

void write_trace_csv(const std::filesystem::path& path, const TraceFile& trace);
TraceFile read_trace_csv(const std::filesystem::path& path);

struct PartitionFile {
  Provenance header;  // serialized as JSON string fields
  Partition partition;
  ObjectiveBreakdown breakdown;
};

void write_partition_json(const std::filesystem::path& path, const PartitionFile& file);
PartitionFile read_partition_json(const std::filesystem::path& path);

std::string csv_row(const std::vector<std::string>& fields);

}  // namespace coalform
