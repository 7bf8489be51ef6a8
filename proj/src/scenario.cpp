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

#include "trajbench/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trajbench {

const char* to_string(RoadStructure v) { return v == RoadStructure::kTurn ? "TURN" : "CRUISING"; }

const char* to_string(Difficulty v) {
  switch (v) {
    case Difficulty::kHard: return "HARD";
    case Difficulty::kMiddle: return "MIDDLE";
    case Difficulty::kEasy: return "EASY";
  }
  return "EASY";
}

const char* to_string(LengthClass v) { return v == LengthClass::kLong ? "LONG" : "SHORT"; }

RoadStructure structure_from_string(std::string_view s) {
  if (s == "TURN") return RoadStructure::kTurn;
  if (s == "CRUISING") return RoadStructure::kCruising;
  throw Error(ErrorKind::kInvalidArgument, "unknown road structure '" + std::string(s) + "'");
}

Difficulty difficulty_from_string(std::string_view s) {
  if (s == "HARD") return Difficulty::kHard;
  if (s == "MIDDLE") return Difficulty::kMiddle;
  if (s == "EASY") return Difficulty::kEasy;
  throw Error(ErrorKind::kInvalidArgument, "unknown difficulty '" + std::string(s) + "'");
}

LengthClass length_from_string(std::string_view s) {
  if (s == "SHORT") return LengthClass::kShort;
  if (s == "LONG") return LengthClass::kLong;
  throw Error(ErrorKind::kInvalidArgument, "unknown length class '" + std::string(s) + "'");
}

std::string ScenarioTag::key() const {
  return std::string(to_string(structure)) + "/" + to_string(difficulty) + "/" + to_string(length);
}

ScenarioTag ScenarioTag::from_key(std::string_view key) {
  const auto a = key.find('/');
  const auto b = a == std::string_view::npos ? a : key.find('/', a + 1);
  if (b == std::string_view::npos) {
    throw Error(ErrorKind::kInvalidArgument, "malformed category key '" + std::string(key) + "'");
  }
  return {structure_from_string(key.substr(0, a)), difficulty_from_string(key.substr(a + 1, b - a - 1)),
          length_from_string(key.substr(b + 1))};
}

const std::array<ScenarioTag, 12>& all_categories() {
  static const std::array<ScenarioTag, 12> kAll = [] {
    std::array<ScenarioTag, 12> out;
    std::size_t i = 0;
    for (auto s : {RoadStructure::kTurn, RoadStructure::kCruising}) {
      for (auto d : {Difficulty::kHard, Difficulty::kMiddle, Difficulty::kEasy}) {
        for (auto l : {LengthClass::kShort, LengthClass::kLong}) out[i++] = {s, d, l};
      }
    }
    return out;
  }();
  return kAll;
}

void ScenarioRecord::validate() const {
  if (past.dt() != dt || future.dt() != dt) {
    throw Error(ErrorKind::kShape, "scenario '" + id + "': past/future dt differs from record dt");
  }
}

void ScenarioConfig::validate() const {
  if (!(turn_radius > 0.0)) throw Error(ErrorKind::kInvalidArgument, "scenario: turn_radius must be positive");
  if (!(beta > 0.0)) throw Error(ErrorKind::kInvalidArgument, "scenario: beta must be positive");
  double sum = 0.0;
  for (double a : alpha) {
    if (!(a > 0.0)) throw Error(ErrorKind::kInvalidArgument, "scenario: alpha components must be positive");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorKind::kInvalidArgument, "scenario: alpha must sum to 1");
  }
}

RoadStructure tag_structure(const ScenarioRecord& rec, const RoadMap& map,
                            const ScenarioConfig& cfg) {
  if (rec.map_id != map.map_id()) {
    throw Error(ErrorKind::kDataConsistency, "scenario '" + rec.id + "' references map '" +
                                                 rec.map_id + "' but was given '" +
                                                 map.map_id() + "'");
  }
  for (const Trajectory* t : {&rec.past, &rec.future}) {
    for (Eigen::Index i = 0; i < t->size(); ++i) {
      for (int idx : map.lane_indices_within_radius(t->point(i), cfg.turn_radius)) {
        if (is_turn_lane(map.lanes()[static_cast<std::size_t>(idx)])) return RoadStructure::kTurn;
      }
    }
  }
  return RoadStructure::kCruising;
}

std::map<std::string, double> difficulty_scores(const MinFdeTable& min_fde_by_model) {
  std::map<std::string, double> out;
  std::size_t models = 0;
  bool first = true;
  for (const auto& [id, values] : min_fde_by_model) {
    if (values.empty()) {
      throw Error(ErrorKind::kDataConsistency, "scenario '" + id + "' has no model minFDE values");
    }
    if (first) {
      models = values.size();
      first = false;
    } else if (values.size() != models) {
      throw Error(ErrorKind::kDataConsistency,
                  "scenario '" + id + "' has " + std::to_string(values.size()) +
                      " model minFDE values, expected " + std::to_string(models));
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    out.emplace(id, sum / static_cast<double>(values.size()));
  }
  return out;
}

std::map<std::string, Difficulty> partition_difficulty(const std::map<std::string, double>& scores,
                                                       const std::array<double, 3>& alpha) {
  std::vector<std::pair<std::string, double>> order(scores.begin(), scores.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const auto n = static_cast<double>(order.size());
  const auto round_half_up = [](double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); };
  const std::size_t n_hard = std::min(round_half_up(alpha[0] * n), order.size());
  const std::size_t n_mid = std::min(round_half_up(alpha[1] * n), order.size() - n_hard);

  std::map<std::string, Difficulty> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Difficulty d = i < n_hard ? Difficulty::kHard
                         : i < n_hard + n_mid ? Difficulty::kMiddle
                                              : Difficulty::kEasy;
    out.emplace(order[i].first, d);
  }
  return out;
}

LengthClass tag_length(const ScenarioRecord& rec, double beta) {
  const Points2d& future = rec.future.points();
  Points2d path(2, future.cols() + 1);
  path.col(0) = rec.last_observed();
  path.rightCols(future.cols()) = future;
  return arc_length<double>(path) >= beta ? LengthClass::kLong : LengthClass::kShort;
}

TagSet tag_all(const std::vector<ScenarioRecord>& records, const MapSet& maps,
               const MinFdeTable& min_fde_by_model, const ScenarioConfig& cfg) {
  cfg.validate();
  TagSet out;
  out.config = cfg;
  for (const auto& c : all_categories()) out.category_counts[c.key()] = 0;
  if (records.empty()) return out;

  std::vector<std::string> missing;
  MinFdeTable table;
  for (const auto& rec : records) {
    const auto it = min_fde_by_model.find(rec.id);
    if (it == min_fde_by_model.end()) {
      missing.push_back(rec.id);
    } else {
      table.emplace(rec.id, it->second);
    }
  }
  if (!missing.empty()) {
    std::string msg = "no model minFDE for scenarios:";
    for (const auto& id : missing) msg += " " + id;
    throw Error(ErrorKind::kDataConsistency, msg);
  }
  const auto difficulty = partition_difficulty(difficulty_scores(table), cfg.alpha);

  for (const auto& rec : records) {
    const auto m = maps.find(rec.map_id);
    if (m == maps.end()) {
      throw Error(ErrorKind::kDataConsistency,
                  "scenario '" + rec.id + "' references unknown map '" + rec.map_id + "'");
    }
    ScenarioTag tag{tag_structure(rec, m->second, cfg), difficulty.at(rec.id),
                    tag_length(rec, cfg.beta)};
    if (!out.tags.emplace(rec.id, tag).second) {
      throw Error(ErrorKind::kDataConsistency, "duplicate scenario id '" + rec.id + "'");
    }
    ++out.category_counts[tag.key()];
  }
  return out;
}

}  // namespace trajbench
