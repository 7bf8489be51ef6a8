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

// Small builders shared by the unit and acceptance suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "trajbench/geom.hpp"
#include "trajbench/map_model.hpp"
#include "trajbench/trajectory.hpp"

namespace trajbench::testing {

inline Points2d pts(std::initializer_list<std::pair<double, double>> xy) {
  Points2d out(2, static_cast<Eigen::Index>(xy.size()));
  Eigen::Index i = 0;
  for (const auto& [x, y] : xy) out.col(i++) = Point2d(x, y);
  return out;
}

inline Trajectory traj(std::initializer_list<std::pair<double, double>> xy, double dt = 0.1) {
  return Trajectory(pts(xy), dt);
}

/// n points start, start + step, ...
inline Trajectory line(const Point2d& start, const Point2d& step, int n, double dt = 0.1) {
  Points2d p(2, n);
  for (int i = 0; i < n; ++i) p.col(i) = start + static_cast<double>(i) * step;
  return Trajectory(std::move(p), dt);
}

/// Points whose consecutive spacing follows `steps` (meters), heading along +x
/// from `start`. Returns steps.size() + 1 points.
inline Trajectory from_steps(const Point2d& start, const std::vector<double>& steps,
                             double dt = 0.1) {
  Points2d p(2, static_cast<Eigen::Index>(steps.size() + 1));
  p.col(0) = start;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    p.col(static_cast<Eigen::Index>(i + 1)) =
        p.col(static_cast<Eigen::Index>(i)) + Point2d(steps[i], 0.0);
  }
  return Trajectory(std::move(p), dt);
}

inline Polygon<double> rect(double x0, double y0, double x1, double y1) {
  return Polygon<double>(pts({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}));
}

/// Straight lane along x between x0 and x1 centred at y; westbound lanes run
/// from x1 to x0.
inline LaneSegment straight_lane(const std::string& id, double x0, double x1, double y,
                                 double width, bool eastbound = true) {
  return LaneSegment{id,
                     eastbound ? Polyline<double>(pts({{x0, y}, {x1, y}}))
                               : Polyline<double>(pts({{x1, y}, {x0, y}})),
                     rect(x0, y - width / 2, x1, y + width / 2),
                     TurnDirection::kNone,
                     false,
                     {},
                     std::nullopt,
                     std::nullopt};
}

/// Lane with a centerline only; the polygon is the centerline's bounding box
/// grown by one meter.
inline LaneSegment lane_along(const std::string& id, const Points2d& centerline) {
  Box2d box;
  for (Eigen::Index i = 0; i < centerline.cols(); ++i) box.extend(Point2d(centerline.col(i)));
  return LaneSegment{id, Polyline<double>(centerline),
                     rect(box.min().x() - 1, box.min().y() - 1, box.max().x() + 1,
                          box.max().y() + 1),
                     TurnDirection::kNone,
                     false,
                     {},
                     std::nullopt,
                     std::nullopt};
}

/// Drivable area = one rectangle covering every lane polygon's bounding box
/// plus `margin`.
inline RoadMap map_from_lanes(const std::string& map_id, std::vector<LaneSegment> lanes,
                              double margin = 0.3) {
  Box2d box;
  for (const auto& l : lanes) box.extend(l.polygon.bounding_box());
  std::vector<Polygon<double>> drivable{
      rect(box.min().x() - margin, box.min().y() - margin, box.max().x() + margin,
           box.max().y() + margin)};
  return RoadMap(map_id, std::move(lanes), std::move(drivable));
}

/// Convex polygon: n sorted random angles on a circle of radius r about c.
inline Points2d random_convex(std::mt19937_64& rng, int n, const Point2d& c, double r) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::vector<double> a(static_cast<std::size_t>(n));
  for (auto& v : a) v = ang(rng);
  std::sort(a.begin(), a.end());
  Points2d ring(2, n);
  for (int i = 0; i < n; ++i) {
    ring.col(i) = c + r * Point2d(std::cos(a[static_cast<std::size_t>(i)]),
                                  std::sin(a[static_cast<std::size_t>(i)]));
  }
  return ring;
}

/// Inside test by half-planes for a CCW convex ring; also returns the
/// distance to the nearest edge line.
inline std::pair<bool, double> half_plane_inside(const Points2d& ccw_ring, const Point2d& p) {
  bool inside = true;
  double margin = std::numeric_limits<double>::infinity();
  const Eigen::Index n = ccw_ring.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point2d a = ccw_ring.col(i);
    const Point2d b = ccw_ring.col((i + 1) % n);
    const Point2d e = b - a;
    const double side = (e.x() * (p - a).y() - e.y() * (p - a).x()) / e.norm();
    if (side < 0.0) inside = false;
    margin = std::min(margin, std::abs(side));
  }
  return {inside, margin};
}

}  // namespace trajbench::testing
