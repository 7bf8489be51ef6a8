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

#include "trajbench/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trajbench {

Trajectory::Trajectory(Points2d points, double dt) : points_(std::move(points)), dt_(dt) {
  if (points_.cols() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "trajectory needs at least 2 points");
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw Error(ErrorKind::kInvalidArgument, "trajectory dt must be positive");
  }
  if (!all_finite(points_)) {
    throw Error(ErrorKind::kInvalidArgument, "trajectory has non-finite coordinates");
  }
}

Trajectory Trajectory::prefix(Eigen::Index n) const {
  return Trajectory(points_.leftCols(std::clamp<Eigen::Index>(n, 2, points_.cols())), dt_);
}

void PredictionSet::validate() const {
  if (modes.empty()) {
    throw Error(ErrorKind::kShape, "prediction '" + scenario_id + "' has no modes");
  }
  for (const auto& m : modes) {
    if (m.size() != modes.front().size() || m.dt() != modes.front().dt()) {
      throw Error(ErrorKind::kShape,
                  "prediction '" + scenario_id + "': modes differ in length or dt");
    }
  }
  if (probabilities) {
    if (probabilities->size() != modes.size()) {
      throw Error(ErrorKind::kShape,
                  "prediction '" + scenario_id + "': probability count differs from K");
    }
    double sum = 0.0;
    for (double p : *probabilities) {
      if (!(p >= 0.0)) {
        throw Error(ErrorKind::kShape, "prediction '" + scenario_id + "': negative probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw Error(ErrorKind::kShape,
                  "prediction '" + scenario_id + "': probabilities do not sum to 1");
    }
  }
  if (anchor && !all_finite(*anchor)) {
    throw Error(ErrorKind::kShape, "prediction '" + scenario_id + "': non-finite anchor");
  }
}

void KinematicConfig::validate() const {
  if (!(a_min < a_max)) throw Error(ErrorKind::kInvalidArgument, "kinematic: a_min must be < a_max");
  if (window < 1) throw Error(ErrorKind::kInvalidArgument, "kinematic: window must be >= 1");
}

Points2d step_vectors(const Trajectory& traj, const std::optional<Point2d>& anchor) {
  const Points2d& p = traj.points();
  const Eigen::Index n = p.cols();
  if (anchor) {
    Points2d out(2, n);
    out.col(0) = p.col(0) - *anchor;
    out.rightCols(n - 1) = p.rightCols(n - 1) - p.leftCols(n - 1);
    return out;
  }
  return p.rightCols(n - 1) - p.leftCols(n - 1);
}

Eigen::VectorXd speed_profile(const Trajectory& traj, const std::optional<Point2d>& anchor) {
  return step_vectors(traj, anchor).colwise().norm().transpose() / traj.dt();
}

Eigen::VectorXd accel_profile(const Trajectory& traj, const std::optional<Point2d>& anchor) {
  const Eigen::VectorXd s = speed_profile(traj, anchor);
  if (s.size() < 2) {
    throw Error(ErrorKind::kTooShort, "too short for acceleration");
  }
  const Eigen::Index n = s.size() - 1;
  return (s.tail(n) - s.head(n)) / traj.dt();
}

KinematicCheck kinematic_window_check(const Trajectory& traj, const KinematicConfig& cfg) {
  const Eigen::VectorXd a = accel_profile(traj, cfg.anchor);
  const Eigen::Index w = std::min<Eigen::Index>(cfg.window, a.size());
  KinematicCheck out;
  out.a_init = a.head(w).mean();
  out.a_final = a.tail(w).mean();
  const auto in_range = [&](double v) { return v >= cfg.a_min && v <= cfg.a_max; };
  out.pass = in_range(out.a_init) && in_range(out.a_final);
  return out;
}

Trajectory kinematic_clip(const Trajectory& traj, const KinematicConfig& cfg) {
  const Eigen::VectorXd s = speed_profile(traj, cfg.anchor);
  if (s.size() < 2) return traj;
  const Eigen::Index n_acc = s.size() - 1;
  Eigen::Index first_bad = n_acc;
  for (Eigen::Index j = 0; j < n_acc; ++j) {
    const double a = (s(j + 1) - s(j)) / traj.dt();
    if (!(a >= cfg.a_min && a <= cfg.a_max)) {
      first_bad = j;
      break;
    }
  }
  if (first_bad == n_acc) return traj;
  // Keep speeds s_0..s_{first_bad}. Speed j is produced by point j with an
  // anchor and by point j+1 without one.
  const Eigen::Index keep_points = cfg.anchor ? first_bad + 1 : first_bad + 2;
  return traj.prefix(std::max<Eigen::Index>(keep_points, 2));
}

}  // namespace trajbench
