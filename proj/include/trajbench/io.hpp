// Copyright 2026 The trajbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON interchange: maps, scenarios, predictions, minFDE tables, tags,
// run configuration and metrics. Readers validate as they go and report the
// JSON path of the first offending field (ErrorKind::kSchema).

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "trajbench/bench.hpp"
#include "trajbench/map_model.hpp"
#include "trajbench/scenario.hpp"
#include "trajbench/trajectory.hpp"

namespace trajbench::io {

using Json = nlohmann::json;

struct PredictionsFile {
  std::string model;
  double dt = 0.1;
  std::vector<PredictionSet> predictions;
};

struct MinFdeFile {
  std::vector<std::string> models;
  MinFdeTable table;
};

struct MetricsFile {
  EvaluationRun run;
  std::map<std::string, ScenarioTag> tags;
};

Json map_to_json(const RoadMap& map);
RoadMap map_from_json(const Json& j, const std::string& path = "$");
/// Accepts a single map document or {"maps": [...]}.
MapSet maps_from_json(const Json& j);

Json scenarios_to_json(const std::vector<ScenarioRecord>& records);
std::vector<ScenarioRecord> scenarios_from_json(const Json& j);

Json predictions_to_json(const PredictionsFile& file);
PredictionsFile predictions_from_json(const Json& j);

Json minfde_to_json(const MinFdeFile& file);
MinFdeFile minfde_from_json(const Json& j);

Json config_to_json(const RunConfig& cfg);
/// Missing fields keep their defaults; the result is validated.
RunConfig config_from_json(const Json& j);

Json tags_to_json(const TagSet& tags, const RunConfig& cfg);
TagSet tags_from_json(const Json& j);

Json metrics_to_json(const EvaluationRun& run);
MetricsFile metrics_from_json(const Json& j);

Json report_to_json(const MetricReport& report);

/// Throws kDataConsistency listing scenario ids that reference unknown maps
/// and predictions that reference unknown scenarios.
void validate_references(const std::vector<ScenarioRecord>& records, const MapSet& maps,
                         const std::vector<PredictionSet>& predictions);

std::string read_text(const std::filesystem::path& path);
/// Parse errors and missing files are kSchema errors.
Json read_json(const std::filesystem::path& path);
Json parse_json(std::string_view text, const std::string& origin);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);
/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string sha256_hex(std::string_view content);

}  // namespace trajbench::io
