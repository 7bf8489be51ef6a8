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

// Trajectory containers and longitudinal kinematics.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "trajbench/geom.hpp"

namespace trajbench {

/// Uniformly sampled planar trajectory: at least two points, dt > 0.
class Trajectory {
 public:
  Trajectory(Points2d points, double dt);

  const Points2d& points() const { return points_; }
  double dt() const { return dt_; }
  Eigen::Index size() const { return points_.cols(); }
  Point2d point(Eigen::Index i) const { return points_.col(i); }
  Point2d front() const { return points_.col(0); }
  Point2d back() const { return points_.col(points_.cols() - 1); }

  /// First n points (n >= 2).
  Trajectory prefix(Eigen::Index n) const;

  bool operator==(const Trajectory& other) const {
    return dt_ == other.dt_ && points_.cols() == other.points_.cols() &&
           points_ == other.points_;
  }

 private:
  Points2d points_;
  double dt_;
};

/// K candidate futures for one agent.
struct PredictionSet {
  std::string scenario_id;
  std::vector<Trajectory> modes;
  std::optional<std::vector<double>> probabilities;
  /// Last observed position.
  std::optional<Point2d> anchor;

  /// Modes share point count and dt; probabilities (if any) are K
  /// non-negative values summing to 1 +- 1e-6. Throws kShape.
  void validate() const;
  std::size_t k() const { return modes.size(); }
  Eigen::Index horizon() const { return modes.empty() ? 0 : modes.front().size(); }
};

struct KinematicConfig {
  double a_min = -2.0;  // m/s^2
  double a_max = 1.47;  // m/s^2
  int window = 3;
  /// Prepended as the zeroth position when present.
  std::optional<Point2d> anchor;

  void validate() const;
};

struct KinematicCheck {
  bool pass = false;
  double a_init = 0.0;
  double a_final = 0.0;
};

/// Per-step displacement vectors; T of them with an anchor, T-1 without.
Points2d step_vectors(const Trajectory& traj, const std::optional<Point2d>& anchor = std::nullopt);

Eigen::VectorXd speed_profile(const Trajectory& traj,
                              const std::optional<Point2d>& anchor = std::nullopt);

/// Forward differences of speeds. Throws kTooShort with fewer than two speeds.
Eigen::VectorXd accel_profile(const Trajectory& traj,
                              const std::optional<Point2d>& anchor = std::nullopt);

/// Means of the first and last `window` acceleration samples, each checked
/// against [a_min, a_max] inclusive.
KinematicCheck kinematic_window_check(const Trajectory& traj, const KinematicConfig& cfg);

/// Longest prefix whose acceleration samples all lie in [a_min, a_max], never
/// shorter than two points.
Trajectory kinematic_clip(const Trajectory& traj, const KinematicConfig& cfg);

inline Point2d displacement_vector(const Trajectory& traj) { return traj.back() - traj.front(); }

}  // namespace trajbench
