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

// Lane-level road map with the containment, radius, heading and drivable-area
// queries used by the admissibility tests and scenario tagging.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trajbench/geom.hpp"

namespace trajbench {

enum class TurnDirection { kNone, kLeft, kRight };

const char* to_string(TurnDirection turn);
TurnDirection turn_from_string(std::string_view s);

struct LaneSegment {
  std::string id;
  Polyline<double> centerline;
  Polygon<double> polygon;
  TurnDirection turn = TurnDirection::kNone;
  bool is_intersection = false;
  std::vector<std::string> successors;
  std::optional<std::string> left_neighbor;
  std::optional<std::string> right_neighbor;
};

/// A lane counts as a turn lane only inside an intersection with a left or
/// right tag.
inline bool is_turn_lane(const LaneSegment& lane) {
  return lane.is_intersection &&
         (lane.turn == TurnDirection::kLeft || lane.turn == TurnDirection::kRight);
}

/// Immutable after construction. Construction validates lane ids, references
/// and centerline placement (throws kInvalidMap); lanes poking out of the
/// drivable area only produce warnings.
class RoadMap {
 public:
  /// Maximum distance a centerline vertex may sit outside its lane polygon.
  static constexpr double kCenterlineTolerance = 0.5;

  RoadMap(std::string map_id, std::vector<LaneSegment> lanes,
          std::vector<Polygon<double>> drivable, double cell_size = kDefaultGridCell);

  const std::string& map_id() const { return map_id_; }
  const std::vector<LaneSegment>& lanes() const { return lanes_; }
  const std::vector<Polygon<double>>& drivable() const { return drivable_; }
  const GridIndex<double>& lane_index() const { return lane_index_; }
  const GridIndex<double>& drivable_index() const { return drivable_index_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// nullptr when absent.
  const LaneSegment* find_lane(std::string_view id) const;
  /// Throws kInvalidArgument when absent.
  const LaneSegment& lane(std::string_view id) const;

  std::vector<int> lane_indices_containing(const Point2d& p) const;
  std::vector<int> lane_indices_within_radius(const Point2d& p, double r) const;

 private:
  std::string map_id_;
  std::vector<LaneSegment> lanes_;
  std::vector<Polygon<double>> drivable_;
  GridIndex<double> lane_index_;
  GridIndex<double> drivable_index_;
  std::unordered_map<std::string, int> by_id_;
  std::vector<std::string> warnings_;
};

/// Ids of every lane whose polygon contains p (boundary inclusive), in map
/// order.
std::vector<std::string> lanes_containing(const RoadMap& map, const Point2d& p);

/// Ids of every lane whose polygon lies within r of p, in map order.
std::vector<std::string> lanes_within_radius(const RoadMap& map, const Point2d& p, double r);

/// Heading of the centerline segment nearest to p.
double lane_heading_at(const LaneSegment& lane, const Point2d& p);

bool drivable_contains(const RoadMap& map, const Point2d& p);

}  // namespace trajbench
