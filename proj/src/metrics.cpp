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

#include "trajbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace trajbench {
namespace {

void require_same_shape(const PredictionSet& pred, const Trajectory& gt) {
  if (pred.modes.empty()) {
    throw Error(ErrorKind::kShape, "prediction '" + pred.scenario_id + "' has no modes");
  }
  for (const auto& m : pred.modes) {
    if (m.size() != gt.size()) {
      throw Error(ErrorKind::kShape, "prediction '" + pred.scenario_id + "' has " +
                                         std::to_string(m.size()) +
                                         " steps but ground truth has " +
                                         std::to_string(gt.size()));
    }
  }
}

void require_pairs(const PredictionSet& pred) {
  if (pred.modes.size() < 2) {
    throw Error(ErrorKind::kInsufficientModes,
                "prediction '" + pred.scenario_id + "' needs at least 2 modes");
  }
  for (const auto& m : pred.modes) {
    if (m.size() != pred.modes.front().size()) {
      throw Error(ErrorKind::kShape, "prediction '" + pred.scenario_id + "': ragged modes");
    }
  }
}

double mean_distance(const Points2d& a, const Points2d& b) {
  return (a - b).colwise().norm().mean();
}

double final_distance(const Trajectory& a, const Trajectory& b) {
  return (a.back() - b.back()).norm();
}

double rate(const std::vector<bool>& flags) {
  if (flags.empty()) return 0.0;
  return static_cast<double>(std::count(flags.begin(), flags.end(), true)) /
         static_cast<double>(flags.size());
}

}  // namespace

void AlignmentConfig::validate() const {
  if (!(threshold_lac > 0.0 && threshold_lac < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "alignment: threshold_lac must be in (0, 1)");
  }
  if (tail_steps < 2) throw Error(ErrorKind::kInvalidArgument, "alignment: tail_steps must be >= 2");
  if (!(stationary_eps >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "alignment: stationary_eps must be >= 0");
  }
}

void DaoConfig::validate() const {
  if (!(cell > 0.0)) throw Error(ErrorKind::kInvalidArgument, "dao: cell must be positive");
  if (!(roi_side > 0.0)) throw Error(ErrorKind::kInvalidArgument, "dao: roi_side must be positive");
  if (!(scale > 0.0)) throw Error(ErrorKind::kInvalidArgument, "dao: scale must be positive");
}

double TriadResult::boundary_rate() const { return rate(boundary_pass); }
double TriadResult::alignment_rate() const { return rate(alignment_pass); }
double TriadResult::kinematic_rate() const { return rate(kinematic_pass); }

double min_ade(const PredictionSet& pred, const Trajectory& gt) {
  require_same_shape(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : pred.modes) best = std::min(best, mean_distance(m.points(), gt.points()));
  return best;
}

double min_fde(const PredictionSet& pred, const Trajectory& gt) {
  require_same_shape(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : pred.modes) best = std::min(best, final_distance(m, gt));
  return best;
}

double rf(const PredictionSet& pred, const Trajectory& gt) {
  require_same_shape(pred, gt);
  double best = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (const auto& m : pred.modes) {
    const double fde = final_distance(m, gt);
    best = std::min(best, fde);
    total += fde;
  }
  const double avg = total / static_cast<double>(pred.modes.size());
  return avg / std::max(best, kRfEpsilon);
}

double min_asd(const PredictionSet& pred) {
  require_pairs(pred);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pred.modes.size(); ++i) {
    for (std::size_t j = i + 1; j < pred.modes.size(); ++j) {
      best = std::min(best, mean_distance(pred.modes[i].points(), pred.modes[j].points()));
    }
  }
  return best;
}

double min_fsd(const PredictionSet& pred) {
  require_pairs(pred);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pred.modes.size(); ++i) {
    for (std::size_t j = i + 1; j < pred.modes.size(); ++j) {
      best = std::min(best, final_distance(pred.modes[i], pred.modes[j]));
    }
  }
  return best;
}

bool test_boundary(const Trajectory& mode, const RoadMap& map) {
  for (Eigen::Index i = 0; i < mode.size(); ++i) {
    if (!drivable_contains(map, mode.point(i))) return false;
  }
  return true;
}

double dac(const PredictionSet& pred, const RoadMap& map) {
  if (pred.modes.empty()) return 0.0;
  std::size_t ok = 0;
  for (const auto& m : pred.modes) ok += test_boundary(m, map) ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(pred.modes.size());
}

double dao(const PredictionSet& pred, const RoadMap& map, const DaoConfig& cfg,
           const Point2d& anchor) {
  cfg.validate();
  const auto n = static_cast<std::int64_t>(std::ceil(cfg.roi_side / cfg.cell - 1e-9));
  const Point2d lo = anchor - Point2d::Constant(cfg.roi_side / 2.0);
  const Box2d roi(lo, lo + Point2d::Constant(static_cast<double>(n) * cfg.cell));

  std::vector<bool> drivable(static_cast<std::size_t>(n * n));
  std::size_t drivable_cells = 0;
  for (std::int64_t ix = 0; ix < n; ++ix) {
    for (std::int64_t iy = 0; iy < n; ++iy) {
      const Point2d centre = lo + Point2d((static_cast<double>(ix) + 0.5) * cfg.cell,
                                          (static_cast<double>(iy) + 0.5) * cfg.cell);
      if (drivable_contains(map, centre)) {
        drivable[static_cast<std::size_t>(ix * n + iy)] = true;
        ++drivable_cells;
      }
    }
  }
  if (drivable_cells == 0) return 0.0;

  Eigen::Index total_points = 0;
  for (const auto& m : pred.modes) total_points += m.size();
  Points2d all(2, total_points);
  Eigen::Index c = 0;
  for (const auto& m : pred.modes) {
    all.middleCols(c, m.size()) = m.points();
    c += m.size();
  }
  std::size_t hit = 0;
  for (const auto& [ix, iy] : rasterize_occupancy<double>(all, roi, cfg.cell)) {
    if (ix < n && iy < n && drivable[static_cast<std::size_t>(ix * n + iy)]) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(drivable_cells) * cfg.scale;
}

double aae(const PredictionSet& pred, AngleUnit unit) {
  std::vector<Point2d> dirs;
  for (const auto& m : pred.modes) {
    const Point2d v = displacement_vector(m);
    if (v.norm() > kHeadingEps) dirs.push_back(v);
  }
  if (dirs.size() < 2) {
    throw Error(ErrorKind::kInsufficientModes,
                "prediction '" + pred.scenario_id + "' has fewer than 2 modes with a heading");
  }
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      sum += angle_between<double>(dirs[i], dirs[j]);
      ++pairs;
    }
  }
  const double mean = sum / static_cast<double>(pairs);
  return unit == AngleUnit::kDegrees ? mean * 180.0 / std::numbers::pi : mean;
}

double amv(const PredictionSet& pred, const KinematicConfig& kin, AmvReduction reduction,
           bool clip) {
  require_pairs(pred);
  std::vector<Eigen::VectorXd> magnitudes;
  magnitudes.reserve(pred.modes.size());
  for (const auto& m : pred.modes) {
    const Trajectory used = clip ? kinematic_clip(m, kin) : m;
    magnitudes.push_back(step_vectors(used, kin.anchor).colwise().norm().transpose());
  }
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    for (std::size_t j = i + 1; j < magnitudes.size(); ++j) {
      const Eigen::Index len = std::min(magnitudes[i].size(), magnitudes[j].size());
      double mv = 0.0;
      if (len > 0) {
        mv = (magnitudes[i].head(len) - magnitudes[j].head(len)).cwiseAbs().sum();
        if (reduction == AmvReduction::kMean) mv /= static_cast<double>(len);
      }
      sum += mv;
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

AlignmentResult test_alignment(const Trajectory& mode, const RoadMap& map,
                               const AlignmentConfig& cfg) {
  const Eigen::Index n = mode.size();
  const Eigen::Index tail = std::min<Eigen::Index>(cfg.tail_steps, n);
  const Eigen::Index first = n - tail;
  const Point2d direction = mode.point(n - 1) - mode.point(first);

  AlignmentResult out;
  if (direction.norm() < cfg.stationary_eps || !(direction.norm() > kHeadingEps)) {
    out.pass = cfg.stationary_policy == StationaryPolicy::kPass;
    out.max_confidence = out.pass ? 1.0 : 0.0;
    return out;
  }
  for (Eigen::Index k = first; k < n; ++k) {
    const Point2d p = mode.point(k);
    for (int idx : map.lane_indices_containing(p)) {
      const LaneSegment& lane = map.lanes()[static_cast<std::size_t>(idx)];
      Point2d tangent;
      try {
        tangent = nearest_on_polyline<double>(p, lane.centerline).tangent;
      } catch (const Error&) {
        throw Error(ErrorKind::kInvalidMap, "lane '" + lane.id + "' has a degenerate centerline");
      }
      out.max_confidence = std::max(
          out.max_confidence, alignment_confidence(angle_between<double>(direction, tangent)));
    }
  }
  out.pass = out.max_confidence > cfg.threshold_lac;
  return out;
}

bool test_kinematic(const Trajectory& mode, const KinematicConfig& kin) {
  return kinematic_window_check(mode, kin).pass;
}

TriadResult att(const PredictionSet& pred, const RoadMap& map, const AlignmentConfig& align,
                const KinematicConfig& kin) {
  TriadResult out;
  for (const auto& m : pred.modes) {
    const bool b = test_boundary(m, map);
    const bool a = test_alignment(m, map, align).pass;
    const bool k = test_kinematic(m, kin);
    out.boundary_pass.push_back(b);
    out.alignment_pass.push_back(a);
    out.kinematic_pass.push_back(k);
    out.admissible.push_back(b && a && k);
  }
  out.att_rate = rate(out.admissible);
  return out;
}

}  // namespace trajbench
