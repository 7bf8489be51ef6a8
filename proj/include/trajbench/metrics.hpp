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

// Scalar metrics over one prediction set: accuracy (minADE, minFDE), spread
// (RF, minASD, minFSD), map compliance (DAC, DAO), angular and magnitude
// diversity (AAE, AMV) and the three-test admissibility triad (ATT).

#pragma once

#include <algorithm>
#include <numbers>
#include <vector>

#include "trajbench/map_model.hpp"
#include "trajbench/trajectory.hpp"

namespace trajbench {

enum class AngleUnit { kDegrees, kRadians };
enum class AmvReduction { kSum, kMean };
enum class StationaryPolicy { kPass, kFail };

struct AlignmentConfig {
  double threshold_lac = 0.5;
  int tail_steps = 3;
  double stationary_eps = 0.1;  // m
  StationaryPolicy stationary_policy = StationaryPolicy::kPass;

  void validate() const;
};

struct DaoConfig {
  double cell = 0.5;       // m
  double roi_side = 100.0; // m, square centred on the last observed position
  double scale = 1e4;

  void validate() const;
};

struct AlignmentResult {
  bool pass = false;
  double max_confidence = 0.0;
};

struct TriadResult {
  std::vector<bool> boundary_pass;
  std::vector<bool> alignment_pass;
  std::vector<bool> kinematic_pass;
  std::vector<bool> admissible;
  double att_rate = 0.0;

  double boundary_rate() const;
  double alignment_rate() const;
  double kinematic_rate() const;
};

/// Guard against division by zero in RF.
inline constexpr double kRfEpsilon = 1e-6;

double min_ade(const PredictionSet& pred, const Trajectory& gt);
double min_fde(const PredictionSet& pred, const Trajectory& gt);
/// Mean FDE over modes divided by max(minFDE, kRfEpsilon).
double rf(const PredictionSet& pred, const Trajectory& gt);

double min_asd(const PredictionSet& pred);
double min_fsd(const PredictionSet& pred);

double dac(const PredictionSet& pred, const RoadMap& map);
double dao(const PredictionSet& pred, const RoadMap& map, const DaoConfig& cfg,
           const Point2d& anchor);

/// Mean pairwise angle between mode displacement vectors. Modes without a
/// usable displacement are dropped; fewer than two left is kInsufficientModes.
double aae(const PredictionSet& pred, AngleUnit unit = AngleUnit::kDegrees);

/// Mean pairwise accumulated step-magnitude difference. Each mode is first
/// cut to its kinematically compliant prefix (unless `clip` is false) and
/// pairs are compared over their common length.
double amv(const PredictionSet& pred, const KinematicConfig& kin,
           AmvReduction reduction = AmvReduction::kSum, bool clip = true);

/// max(0, 1 - delta_theta / pi).
inline double alignment_confidence(double delta_theta) {
  return std::max(0.0, 1.0 - delta_theta / std::numbers::pi);
}

bool test_boundary(const Trajectory& mode, const RoadMap& map);
AlignmentResult test_alignment(const Trajectory& mode, const RoadMap& map,
                               const AlignmentConfig& cfg);
bool test_kinematic(const Trajectory& mode, const KinematicConfig& kin);

TriadResult att(const PredictionSet& pred, const RoadMap& map, const AlignmentConfig& align,
                const KinematicConfig& kin);

}  // namespace trajbench
