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

// Scenario extraction: road structure, cross-model difficulty and
// future-length tagging into the 2 x 3 x 2 category grid.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trajbench/map_model.hpp"
#include "trajbench/trajectory.hpp"

namespace trajbench {

enum class RoadStructure { kTurn, kCruising };
enum class Difficulty { kHard, kMiddle, kEasy };
enum class LengthClass { kShort, kLong };

const char* to_string(RoadStructure v);
const char* to_string(Difficulty v);
const char* to_string(LengthClass v);
RoadStructure structure_from_string(std::string_view s);
Difficulty difficulty_from_string(std::string_view s);
LengthClass length_from_string(std::string_view s);

struct ScenarioTag {
  RoadStructure structure = RoadStructure::kCruising;
  Difficulty difficulty = Difficulty::kEasy;
  LengthClass length = LengthClass::kShort;

  /// "STRUCTURE/DIFFICULTY/LENGTH", e.g. "TURN/HARD/LONG".
  std::string key() const;
  static ScenarioTag from_key(std::string_view key);

  auto operator<=>(const ScenarioTag&) const = default;
};

/// The 12 categories in report order: structure, then difficulty, then length.
const std::array<ScenarioTag, 12>& all_categories();

struct ScenarioRecord {
  std::string id;
  std::string map_id;
  std::string agent_id;
  double dt = 0.1;
  Trajectory past;
  Trajectory future;

  void validate() const;
  Point2d last_observed() const { return past.back(); }
};

struct ScenarioConfig {
  double turn_radius = 100.0;                       // m
  std::array<double, 3> alpha = {0.10, 0.45, 0.45}; // hard, middle, easy
  double beta = 28.8;                               // m

  void validate() const;
};

using MapSet = std::map<std::string, RoadMap, std::less<>>;
/// Scenario id -> one minFDE per evaluated model.
using MinFdeTable = std::map<std::string, std::vector<double>>;

struct TagSet {
  ScenarioConfig config;
  std::map<std::string, ScenarioTag> tags;
  /// All 12 category keys, zero counts included.
  std::map<std::string, int> category_counts;
};

/// TURN iff some lane within cfg.turn_radius of any past or future
/// ground-truth point is a turn lane.
RoadStructure tag_structure(const ScenarioRecord& rec, const RoadMap& map,
                            const ScenarioConfig& cfg);

std::map<std::string, double> difficulty_scores(const MinFdeTable& min_fde_by_model);

/// Hardest round(alpha[0] N) scores are HARD, the next round(alpha[1] N)
/// MIDDLE, the rest EASY. Ties are ordered by ascending id.
std::map<std::string, Difficulty> partition_difficulty(const std::map<std::string, double>& scores,
                                                       const std::array<double, 3>& alpha);

/// LONG iff the arc length from the last observed point through the future
/// is at least beta.
LengthClass tag_length(const ScenarioRecord& rec, double beta);

TagSet tag_all(const std::vector<ScenarioRecord>& records, const MapSet& maps,
               const MinFdeTable& min_fde_by_model, const ScenarioConfig& cfg);

}  // namespace trajbench
