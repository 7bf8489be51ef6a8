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

// Planar geometry kernels. Everything here is header-only and templated on the
// scalar type; the rest of the library instantiates it with double.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "trajbench/errors.hpp"

namespace trajbench {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

/// Column-major point list: column i is the i-th point.
template <typename Scalar>
using Points2 = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

template <typename Scalar>
using Box2 = Eigen::AlignedBox<Scalar, 2>;

using Point2d = Vec2<double>;
using Points2d = Points2<double>;
using Box2d = Box2<double>;

/// Points within this distance of a polygon boundary count as inside.
inline constexpr double kBoundaryBand = 1e-9;
/// Vectors shorter than this have no defined heading.
inline constexpr double kHeadingEps = 1e-6;
inline constexpr double kDefaultGridCell = 10.0;

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.array().isFinite().all();
}

template <typename Scalar>
Scalar cross2(const Vec2<Scalar>& a, const Vec2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// ---------------------------------------------------------------------------
// Polyline

template <typename Scalar>
class Polyline {
 public:
  explicit Polyline(Points2<Scalar> points) : points_(std::move(points)) {
    if (points_.cols() < 2) {
      throw Error(ErrorKind::kInvalidArgument,
                  "polyline needs at least 2 points");
    }
    if (!all_finite(points_)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "polyline has non-finite coordinates");
    }
    for (Eigen::Index i = 1; i < points_.cols(); ++i) {
      if (points_.col(i) == points_.col(i - 1)) degenerate_ = true;
    }
  }

  const Points2<Scalar>& points() const { return points_; }
  Eigen::Index size() const { return points_.cols(); }
  Vec2<Scalar> point(Eigen::Index i) const { return points_.col(i); }
  /// True when some consecutive points coincide.
  bool degenerate() const { return degenerate_; }

 private:
  Points2<Scalar> points_;
  bool degenerate_ = false;
};

template <typename Scalar>
Scalar arc_length(const Points2<Scalar>& points) {
  Scalar total(0);
  for (Eigen::Index i = 1; i < points.cols(); ++i) {
    total += (points.col(i) - points.col(i - 1)).norm();
  }
  return total;
}

template <typename Scalar>
Scalar arc_length(const Polyline<Scalar>& pl) {
  return arc_length<Scalar>(pl.points());
}

// ---------------------------------------------------------------------------
// Segment helpers

template <typename Scalar>
struct SegmentProjection {
  Vec2<Scalar> foot;
  Scalar t;  // in [0, 1]
  Scalar squared_distance;
};

template <typename Scalar>
SegmentProjection<Scalar> project_to_segment(const Vec2<Scalar>& p,
                                             const Vec2<Scalar>& a,
                                             const Vec2<Scalar>& b) {
  const Vec2<Scalar> d = b - a;
  const Scalar len2 = d.squaredNorm();
  Scalar t(0);
  if (len2 > Scalar(0)) t = std::clamp((p - a).dot(d) / len2, Scalar(0), Scalar(1));
  // Snap endpoints exactly so that a vertex shared by two segments yields
  // bit-identical distances from both.
  Vec2<Scalar> foot;
  if (t == Scalar(0)) {
    foot = a;
  } else if (t == Scalar(1)) {
    foot = b;
  } else {
    foot = a + t * d;
  }
  return {foot, t, (p - foot).squaredNorm()};
}

template <typename Scalar>
int orientation_sign(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
                     const Vec2<Scalar>& c) {
  const Scalar v = cross2<Scalar>(b - a, c - a);
  return (v > Scalar(0)) - (v < Scalar(0));
}

template <typename Scalar>
bool on_segment_collinear(const Vec2<Scalar>& a, const Vec2<Scalar>& b,
                          const Vec2<Scalar>& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

template <typename Scalar>
bool segments_intersect(const Vec2<Scalar>& p1, const Vec2<Scalar>& p2,
                        const Vec2<Scalar>& q1, const Vec2<Scalar>& q2) {
  const int o1 = orientation_sign(p1, p2, q1);
  const int o2 = orientation_sign(p1, p2, q2);
  const int o3 = orientation_sign(q1, q2, p1);
  const int o4 = orientation_sign(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment_collinear(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment_collinear(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment_collinear(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment_collinear(q1, q2, p2)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Polygon

template <typename Scalar>
Scalar signed_area(const Points2<Scalar>& ring) {
  Scalar twice(0);
  const Eigen::Index n = ring.cols();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    twice += ring(0, i) * ring(1, j) - ring(0, j) * ring(1, i);
  }
  return twice / Scalar(2);
}

/// Simple polygon without holes. The ring is closed implicitly and stored
/// counter-clockwise regardless of input orientation.
template <typename Scalar>
class Polygon {
 public:
  explicit Polygon(const Points2<Scalar>& ring) {
    if (!all_finite(ring)) {
      throw Error(ErrorKind::kInvalidMap, "polygon has non-finite coordinates");
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ring.cols(); ++i) {
      if (!keep.empty() && ring.col(i) == ring.col(keep.back())) continue;
      keep.push_back(i);
    }
    while (keep.size() > 1 && ring.col(keep.back()) == ring.col(keep.front())) {
      keep.pop_back();
    }
    if (keep.size() < 3) {
      throw Error(ErrorKind::kInvalidMap,
                  "polygon needs at least 3 distinct vertices");
    }
    ring_.resize(2, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      ring_.col(static_cast<Eigen::Index>(i)) = ring.col(keep[i]);
    }
    const Scalar area = signed_area<Scalar>(ring_);
    if (!(std::abs(area) > Scalar(0))) {
      throw Error(ErrorKind::kInvalidMap, "degenerate polygon (zero area)");
    }
    if (area < Scalar(0)) ring_ = ring_.rowwise().reverse().eval();
    check_simple();
    for (Eigen::Index i = 0; i < ring_.cols(); ++i) {
      box_.extend(Vec2<Scalar>(ring_.col(i)));
    }
  }

  const Points2<Scalar>& ring() const { return ring_; }
  Eigen::Index size() const { return ring_.cols(); }
  Vec2<Scalar> vertex(Eigen::Index i) const { return ring_.col(i % ring_.cols()); }
  const Box2<Scalar>& bounding_box() const { return box_; }
  Scalar area() const { return signed_area<Scalar>(ring_); }

 private:
  void check_simple() const {
    const Eigen::Index n = ring_.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
      const Vec2<Scalar> a = vertex(i), b = vertex(i + 1);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
        const Vec2<Scalar> c = vertex(j), d = vertex(j + 1);
        if (adjacent) {
          // Adjacent edges may only share their common vertex: reject folds.
          const Vec2<Scalar> shared = (j == i + 1) ? b : a;
          const Vec2<Scalar> other_a = (j == i + 1) ? a : b;
          const Vec2<Scalar> other_c = (j == i + 1) ? d : c;
          if (orientation_sign(other_a, shared, other_c) == 0 &&
              (other_a - shared).dot(other_c - shared) > Scalar(0)) {
            throw Error(ErrorKind::kInvalidMap, "polygon ring folds back on itself");
          }
          continue;
        }
        if (segments_intersect(a, b, c, d)) {
          throw Error(ErrorKind::kInvalidMap, "polygon ring self-intersects");
        }
      }
    }
  }

  Points2<Scalar> ring_;
  Box2<Scalar> box_;
};

template <typename Scalar>
Scalar distance_to_boundary(const Vec2<Scalar>& p, const Polygon<Scalar>& poly) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 0; i < poly.size(); ++i) {
    best = std::min(best,
                    project_to_segment(p, poly.vertex(i), poly.vertex(i + 1)).squared_distance);
  }
  return std::sqrt(best);
}

/// Boundary-inclusive containment: points within kBoundaryBand of an edge are
/// inside.
template <typename Scalar>
bool point_in_polygon(const Vec2<Scalar>& p, const Polygon<Scalar>& poly) {
  const Box2<Scalar>& box = poly.bounding_box();
  const Scalar band(kBoundaryBand);
  if (p.x() < box.min().x() - band || p.x() > box.max().x() + band ||
      p.y() < box.min().y() - band || p.y() > box.max().y() + band) {
    return false;
  }
  if (distance_to_boundary(p, poly) <= band) return true;
  bool inside = false;
  const Eigen::Index n = poly.size();
  for (Eigen::Index i = 0, j = n - 1; i < n; j = i++) {
    const Vec2<Scalar> a = poly.vertex(i), b = poly.vertex(j);
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const Scalar x_cross = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

/// Zero when p is inside, otherwise the distance to the nearest edge.
template <typename Scalar>
Scalar min_distance(const Vec2<Scalar>& p, const Polygon<Scalar>& poly) {
  if (point_in_polygon(p, poly)) return Scalar(0);
  return distance_to_boundary(p, poly);
}

// ---------------------------------------------------------------------------
// Directions

/// atan2-style heading in (-pi, pi]; x-axis is zero.
template <typename Scalar>
Scalar heading(const Vec2<Scalar>& v) {
  if (!(v.norm() > Scalar(kHeadingEps))) {
    throw Error(ErrorKind::kDegenerateHeading, "degenerate heading");
  }
  const Scalar h = std::atan2(v.y(), v.x());
  return h <= -std::numbers::pi_v<Scalar> ? std::numbers::pi_v<Scalar> : h;
}

/// Unsigned angle in [0, pi] from the clamped normalized dot product. Exactly
/// parallel vectors return exactly 0 or pi.
template <typename Scalar>
Scalar angle_between(const Vec2<Scalar>& v1, const Vec2<Scalar>& v2) {
  const Scalar n1 = v1.norm();
  const Scalar n2 = v2.norm();
  if (!(n1 > Scalar(kHeadingEps)) || !(n2 > Scalar(kHeadingEps))) {
    throw Error(ErrorKind::kDegenerateHeading, "degenerate heading");
  }
  const Scalar dot = v1.dot(v2);
  if (cross2<Scalar>(v1, v2) == Scalar(0)) {
    return dot > Scalar(0) ? Scalar(0) : std::numbers::pi_v<Scalar>;
  }
  return std::acos(std::clamp(dot / (n1 * n2), Scalar(-1), Scalar(1)));
}

// ---------------------------------------------------------------------------
// Nearest point on a polyline

template <typename Scalar>
struct PolylineProjection {
  Vec2<Scalar> foot;
  Scalar arc_offset;
  Scalar tangent_heading;
  Vec2<Scalar> tangent;  // unit direction of the segment holding foot
  Scalar distance;
};

/// Closest point on the polyline. Zero-length segments are skipped; when the
/// foot is a shared vertex the following segment supplies the tangent.
template <typename Scalar>
PolylineProjection<Scalar> nearest_on_polyline(const Vec2<Scalar>& p,
                                               const Polyline<Scalar>& pl) {
  bool found = false;
  PolylineProjection<Scalar> best{};
  Scalar best_d2 = std::numeric_limits<Scalar>::infinity();
  Scalar cumulative(0);
  for (Eigen::Index i = 0; i + 1 < pl.size(); ++i) {
    const Vec2<Scalar> a = pl.point(i), b = pl.point(i + 1);
    const Vec2<Scalar> d = b - a;
    const Scalar len = d.norm();
    if (len > Scalar(0)) {
      const auto proj = project_to_segment(p, a, b);
      if (proj.squared_distance <= best_d2) {
        best_d2 = proj.squared_distance;
        best.foot = proj.foot;
        best.arc_offset = cumulative + proj.t * len;
        best.tangent = d / len;
        found = true;
      }
    }
    cumulative += len;
  }
  if (!found) {
    throw Error(ErrorKind::kInvalidArgument, "polyline has no segment of positive length");
  }
  best.tangent_heading = std::atan2(best.tangent.y(), best.tangent.x());
  if (best.tangent_heading <= -std::numbers::pi_v<Scalar>) {
    best.tangent_heading = std::numbers::pi_v<Scalar>;
  }
  best.distance = std::sqrt(best_d2);
  return best;
}

// ---------------------------------------------------------------------------
// Uniform grid over item bounding boxes

template <typename Scalar>
class GridIndex {
 public:
  using CellKey = std::pair<std::int64_t, std::int64_t>;

  explicit GridIndex(std::vector<Box2<Scalar>> item_boxes,
                     Scalar cell_size = Scalar(kDefaultGridCell))
      : cell_size_(cell_size), boxes_(std::move(item_boxes)) {
    if (!(cell_size_ > Scalar(0))) {
      throw Error(ErrorKind::kInvalidArgument, "grid cell size must be positive");
    }
    for (std::size_t id = 0; id < boxes_.size(); ++id) {
      const Box2<Scalar>& b = boxes_[id];
      bounds_.extend(b);
      const CellKey lo = cell_of(b.min());
      const CellKey hi = cell_of(b.max());
      for (std::int64_t cx = lo.first; cx <= hi.first; ++cx) {
        for (std::int64_t cy = lo.second; cy <= hi.second; ++cy) {
          cells_[{cx, cy}].push_back(static_cast<int>(id));
        }
      }
    }
  }

  Scalar cell_size() const { return cell_size_; }
  const Box2<Scalar>& bounds() const { return bounds_; }
  std::size_t item_count() const { return boxes_.size(); }
  const Box2<Scalar>& item_box(int id) const { return boxes_[static_cast<std::size_t>(id)]; }

  /// Ids listed in cell (cx, cy); empty when the cell holds nothing.
  const std::vector<int>& cell_items(const CellKey& key) const {
    static const std::vector<int> kEmpty;
    const auto it = cells_.find(key);
    return it == cells_.end() ? kEmpty : it->second;
  }

  CellKey cell_of(const Vec2<Scalar>& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x() / cell_size_)),
            static_cast<std::int64_t>(std::floor(p.y() / cell_size_))};
  }

  /// Sorted ids whose box overlaps the query box.
  std::vector<int> candidates(const Box2<Scalar>& query) const {
    std::vector<int> out;
    if (boxes_.empty() || !query.intersects(bounds_)) return out;
    const Box2<Scalar> clipped = query.intersection(bounds_);
    const CellKey lo = cell_of(clipped.min());
    const CellKey hi = cell_of(clipped.max());
    const double span = double(hi.first - lo.first + 1) * double(hi.second - lo.second + 1);
    if (span > double(cells_.size())) {
      for (const auto& [key, ids] : cells_) {
        if (key.first < lo.first || key.first > hi.first || key.second < lo.second ||
            key.second > hi.second) {
          continue;
        }
        out.insert(out.end(), ids.begin(), ids.end());
      }
    } else {
      for (std::int64_t cx = lo.first; cx <= hi.first; ++cx) {
        for (std::int64_t cy = lo.second; cy <= hi.second; ++cy) {
          const auto& ids = cell_items({cx, cy});
          out.insert(out.end(), ids.begin(), ids.end());
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    std::erase_if(out, [&](int id) { return !boxes_[static_cast<std::size_t>(id)].intersects(query); });
    return out;
  }

 private:
  struct KeyHash {
    std::size_t operator()(const CellKey& k) const noexcept {
      const auto h1 = static_cast<std::uint64_t>(k.first) * 0x9E3779B97F4A7C15ULL;
      const auto h2 = static_cast<std::uint64_t>(k.second) * 0xC2B2AE3D27D4EB4FULL;
      return static_cast<std::size_t>(h1 ^ (h2 >> 1));
    }
  };

  Scalar cell_size_;
  std::vector<Box2<Scalar>> boxes_;
  Box2<Scalar> bounds_;
  std::unordered_map<CellKey, std::vector<int>, KeyHash> cells_;
};

/// Exact radius query: grid candidates filtered by `exact_distance(id)` <= r.
/// Returned ids are ascending.
template <typename Scalar, typename DistanceFn>
std::vector<int> query_radius(const GridIndex<Scalar>& index, const Vec2<Scalar>& center,
                              Scalar r, DistanceFn&& exact_distance) {
  if (!(r > Scalar(0))) {
    throw Error(ErrorKind::kInvalidArgument, "query radius must be positive");
  }
  const Vec2<Scalar> extent = Vec2<Scalar>::Constant(r);
  std::vector<int> ids = index.candidates(Box2<Scalar>(center - extent, center + extent));
  std::erase_if(ids, [&](int id) {
    if (index.item_box(id).exteriorDistance(center) > r) return true;
    return !(exact_distance(id) <= r);
  });
  return ids;
}

// ---------------------------------------------------------------------------
// Occupancy rasterization

using GridCell = std::pair<std::int64_t, std::int64_t>;

/// Distinct cells touched by points inside the half-open box
/// [roi.min, roi.max), indexed from roi.min.
template <typename Scalar>
std::set<GridCell> rasterize_occupancy(const Points2<Scalar>& points, const Box2<Scalar>& roi,
                                       Scalar cell) {
  if (!(cell > Scalar(0))) {
    throw Error(ErrorKind::kInvalidArgument, "cell size must be positive");
  }
  if (roi.isEmpty()) {
    throw Error(ErrorKind::kInvalidArgument, "region of interest is empty");
  }
  std::set<GridCell> out;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const Vec2<Scalar> p = points.col(i);
    if (p.x() < roi.min().x() || p.x() >= roi.max().x() || p.y() < roi.min().y() ||
        p.y() >= roi.max().y()) {
      continue;
    }
    out.emplace(static_cast<std::int64_t>(std::floor((p.x() - roi.min().x()) / cell)),
                static_cast<std::int64_t>(std::floor((p.y() - roi.min().y()) / cell)));
  }
  return out;
}

}  // namespace trajbench
