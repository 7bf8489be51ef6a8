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

#include "trajbench/map_model.hpp"

#include <set>
#include <sstream>

namespace trajbench {
namespace {

std::vector<Box2d> polygon_boxes(const std::vector<Polygon<double>>& polys) {
  std::vector<Box2d> boxes;
  boxes.reserve(polys.size());
  for (const auto& p : polys) boxes.push_back(p.bounding_box());
  return boxes;
}

std::vector<Box2d> lane_boxes(const std::vector<LaneSegment>& lanes) {
  std::vector<Box2d> boxes;
  boxes.reserve(lanes.size());
  for (const auto& l : lanes) boxes.push_back(l.polygon.bounding_box());
  return boxes;
}

}  // namespace

const char* to_string(TurnDirection turn) {
  switch (turn) {
    case TurnDirection::kNone: return "NONE";
    case TurnDirection::kLeft: return "LEFT";
    case TurnDirection::kRight: return "RIGHT";
  }
  return "NONE";
}

TurnDirection turn_from_string(std::string_view s) {
  if (s == "NONE") return TurnDirection::kNone;
  if (s == "LEFT") return TurnDirection::kLeft;
  if (s == "RIGHT") return TurnDirection::kRight;
  throw Error(ErrorKind::kInvalidArgument, "unknown turn direction '" + std::string(s) + "'");
}

RoadMap::RoadMap(std::string map_id, std::vector<LaneSegment> lanes,
                 std::vector<Polygon<double>> drivable, double cell_size)
    : map_id_(std::move(map_id)),
      lanes_(std::move(lanes)),
      drivable_(std::move(drivable)),
      lane_index_(lane_boxes(lanes_), cell_size),
      drivable_index_(polygon_boxes(drivable_), cell_size) {
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    if (!by_id_.emplace(lanes_[i].id, static_cast<int>(i)).second) {
      throw Error(ErrorKind::kInvalidMap,
                  "map '" + map_id_ + "': duplicate lane id '" + lanes_[i].id + "'");
    }
  }
  std::set<std::string> dangling;
  for (const auto& lane : lanes_) {
    for (const auto& s : lane.successors) {
      if (!by_id_.contains(s)) dangling.insert(s);
    }
    for (const auto* n : {&lane.left_neighbor, &lane.right_neighbor}) {
      if (n->has_value() && !by_id_.contains(**n)) dangling.insert(**n);
    }
  }
  if (!dangling.empty()) {
    std::ostringstream msg;
    msg << "map '" << map_id_ << "': unresolved lane references:";
    for (const auto& id : dangling) msg << ' ' << id;
    throw Error(ErrorKind::kInvalidMap, msg.str());
  }
  for (const auto& lane : lanes_) {
    for (Eigen::Index i = 0; i < lane.centerline.size(); ++i) {
      if (min_distance<double>(lane.centerline.point(i), lane.polygon) > kCenterlineTolerance) {
        throw Error(ErrorKind::kInvalidMap,
                    "map '" + map_id_ + "': centerline of lane '" + lane.id +
                        "' leaves its polygon");
      }
    }
  }
  for (const auto& lane : lanes_) {
    for (Eigen::Index i = 0; i < lane.polygon.size(); ++i) {
      if (!drivable_contains(*this, lane.polygon.vertex(i))) {
        warnings_.push_back("lane '" + lane.id + "' extends outside the drivable area");
        break;
      }
    }
  }
}

const LaneSegment* RoadMap::find_lane(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &lanes_[static_cast<std::size_t>(it->second)];
}

const LaneSegment& RoadMap::lane(std::string_view id) const {
  const LaneSegment* l = find_lane(id);
  if (l == nullptr) {
    throw Error(ErrorKind::kInvalidArgument,
                "map '" + map_id_ + "' has no lane '" + std::string(id) + "'");
  }
  return *l;
}

std::vector<int> RoadMap::lane_indices_containing(const Point2d& p) const {
  const Point2d band = Point2d::Constant(kBoundaryBand);
  std::vector<int> ids = lane_index_.candidates(Box2d(p - band, p + band));
  std::erase_if(ids, [&](int id) {
    return !point_in_polygon<double>(p, lanes_[static_cast<std::size_t>(id)].polygon);
  });
  return ids;
}

std::vector<int> RoadMap::lane_indices_within_radius(const Point2d& p, double r) const {
  return query_radius(lane_index_, p, r, [&](int id) {
    return min_distance<double>(p, lanes_[static_cast<std::size_t>(id)].polygon);
  });
}

std::vector<std::string> lanes_containing(const RoadMap& map, const Point2d& p) {
  std::vector<std::string> out;
  for (int i : map.lane_indices_containing(p)) {
    out.push_back(map.lanes()[static_cast<std::size_t>(i)].id);
  }
  return out;
}

std::vector<std::string> lanes_within_radius(const RoadMap& map, const Point2d& p, double r) {
  std::vector<std::string> out;
  for (int i : map.lane_indices_within_radius(p, r)) {
    out.push_back(map.lanes()[static_cast<std::size_t>(i)].id);
  }
  return out;
}

double lane_heading_at(const LaneSegment& lane, const Point2d& p) {
  try {
    return nearest_on_polyline<double>(p, lane.centerline).tangent_heading;
  } catch (const Error&) {
    throw Error(ErrorKind::kInvalidMap, "lane '" + lane.id + "' has a degenerate centerline");
  }
}

bool drivable_contains(const RoadMap& map, const Point2d& p) {
  const Point2d band = Point2d::Constant(kBoundaryBand);
  for (int id : map.drivable_index().candidates(Box2d(p - band, p + band))) {
    if (point_in_polygon<double>(p, map.drivable()[static_cast<std::size_t>(id)])) return true;
  }
  return false;
}

}  // namespace trajbench
