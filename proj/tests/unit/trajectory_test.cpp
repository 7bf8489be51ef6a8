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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "trajbench/trajectory.hpp"

namespace trajbench {
namespace {

using testing::from_steps;
using testing::line;
using testing::pts;
using testing::traj;

TEST(Trajectory, RejectsBadInput) {
  EXPECT_THROW(Trajectory(pts({{0, 0}}), 0.1), Error);
  EXPECT_THROW(Trajectory(pts({{0, 0}, {1, 0}}), 0.0), Error);
  EXPECT_THROW(Trajectory(pts({{0, 0}, {std::nan(""), 0}}), 0.1), Error);
}

TEST(StepVectors, Examples) {
  const Trajectory t = traj({{0, 0}, {1, 0}, {2, 0}});
  EXPECT_EQ(step_vectors(t), pts({{1, 0}, {1, 0}}));
  EXPECT_EQ(step_vectors(t, Point2d(-1, 0)), pts({{1, 0}, {1, 0}, {1, 0}}));
}

TEST(StepVectors, PrefixSumRebuildsPoints) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 2.0);
  Points2d p(2, 40);
  for (int i = 0; i < 40; ++i) p.col(i) = Point2d(n(rng), n(rng));
  const Points2d v = step_vectors(Trajectory(p, 0.1));
  Point2d acc = p.col(0);
  for (int i = 0; i < 39; ++i) {
    acc += v.col(i);
    EXPECT_NEAR((acc - p.col(i + 1)).norm(), 0.0, 1e-9);
  }
}

TEST(SpeedProfile, Examples) {
  const Eigen::VectorXd s = speed_profile(line(Point2d(0, 0), Point2d(1, 0), 5));
  for (Eigen::Index i = 0; i < s.size(); ++i) EXPECT_DOUBLE_EQ(s(i), 10.0);
  const Eigen::VectorXd z = speed_profile(line(Point2d(3, 3), Point2d(0, 0), 5));
  EXPECT_TRUE(z.isZero());
  const Trajectory t = traj({{0, 0}, {1, 2}, {3, 1}, {2, -2}});
  const Trajectory t2(t.points() * 2.0, t.dt());
  EXPECT_TRUE(speed_profile(t2).isApprox(2.0 * speed_profile(t)));
}

TEST(SpeedProfile, RigidMotionInvariant) {
  const Trajectory t = traj({{0, 0}, {1, 2}, {3, 1}, {2, -2}, {0, -3}});
  const Eigen::Rotation2Dd r(1.1);
  Points2d moved(2, t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) moved.col(i) = r * t.point(i) + Point2d(5, -7);
  EXPECT_TRUE(speed_profile(Trajectory(moved, 0.1)).isApprox(speed_profile(t), 1e-12));
  EXPECT_TRUE(accel_profile(Trajectory(moved, 0.1)).isApprox(accel_profile(t), 1e-9));
}

TEST(AccelProfile, Examples) {
  EXPECT_TRUE(accel_profile(line(Point2d(0, 0), Point2d(1, 0), 6)).isZero(1e-9));
  const Eigen::VectorXd up = accel_profile(from_steps(Point2d(0, 0), {1.0, 1.01}));
  ASSERT_EQ(up.size(), 1);
  EXPECT_NEAR(up(0), 1.0, 1e-9);
  const Eigen::VectorXd down = accel_profile(from_steps(Point2d(0, 0), {1.0, 0.97}));
  EXPECT_NEAR(down(0), -3.0, 1e-9);
  try {
    accel_profile(traj({{0, 0}, {1, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooShort);
  }
  EXPECT_EQ(accel_profile(traj({{0, 0}, {1, 0}}), Point2d(-1, 0)).size(), 1);
}

/// Steps for constant acceleration a from speed v0: step i covers
/// (v0 + a * i * dt) * dt.
std::vector<double> accelerating_steps(double v0, double a, int n, double dt = 0.1) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back((v0 + a * i * dt) * dt);
  return out;
}

TEST(KinematicWindow, Examples) {
  const KinematicConfig cfg;
  const auto cruise = kinematic_window_check(line(Point2d(0, 0), Point2d(1, 0), 30), cfg);
  EXPECT_TRUE(cruise.pass);
  EXPECT_NEAR(cruise.a_init, 0.0, 1e-9);
  EXPECT_NEAR(cruise.a_final, 0.0, 1e-9);

  const auto fast = kinematic_window_check(from_steps(Point2d(0, 0), accelerating_steps(5, 10, 30)), cfg);
  EXPECT_FALSE(fast.pass);
  EXPECT_NEAR(fast.a_init, 10.0, 1e-9);
  EXPECT_NEAR(fast.a_final, 10.0, 1e-9);

  const auto brake = kinematic_window_check(from_steps(Point2d(0, 0), accelerating_steps(15, -3, 30)), cfg);
  EXPECT_FALSE(brake.pass);
  EXPECT_NEAR(brake.a_init, -3.0, 1e-9);
  EXPECT_NEAR(brake.a_final, -3.0, 1e-9);
}

TEST(KinematicWindow, BoundsAreInclusive) {
  KinematicConfig cfg;
  cfg.a_min = -2.0;
  cfg.a_max = 2.0;
  // Steps 1.0 and 1.02 over dt 0.1: 2.0 m/s^2 up to rounding, so pin with
  // limits placed exactly at the computed sample.
  const Trajectory t = from_steps(Point2d(0, 0), {1.0, 1.02});
  const double a = accel_profile(t)(0);
  cfg.a_max = a;
  EXPECT_TRUE(kinematic_window_check(t, cfg).pass);
  cfg.a_max = std::nextafter(a, 0.0);
  EXPECT_FALSE(kinematic_window_check(t, cfg).pass);
}

TEST(KinematicWindow, WindowAveraging) {
  KinematicConfig cfg;
  // One spike of +3 inside the first three samples averages to +1.
  const Trajectory t = from_steps(Point2d(0, 0), {1.0, 1.03, 1.03, 1.03, 1.03, 1.03});
  const auto r = kinematic_window_check(t, cfg);
  EXPECT_NEAR(r.a_init, 1.0, 1e-9);
  EXPECT_TRUE(r.pass);
  cfg.window = 1;
  EXPECT_FALSE(kinematic_window_check(t, cfg).pass);
}

TEST(KinematicClip, CompliantTrajectoryUnchanged) {
  const Trajectory t = line(Point2d(0, 0), Point2d(1, 0), 30);
  EXPECT_EQ(kinematic_clip(t, KinematicConfig{}), t);
}

TEST(KinematicClip, CutsAtFirstViolation) {
  // Speeds 10, 10, 13, 13: accelerations 0, 30, 0.
  const Trajectory t = from_steps(Point2d(0, 0), {1.0, 1.0, 1.3, 1.3});
  const Trajectory c = kinematic_clip(t, KinematicConfig{});
  // Keep the two compliant speeds, i.e. the first three points.
  EXPECT_EQ(c, t.prefix(3));
  KinematicConfig anchored;
  anchored.anchor = Point2d(-1, 0);
  const Trajectory a = from_steps(Point2d(0, 0), {1.0, 1.3, 1.3});
  EXPECT_EQ(kinematic_clip(a, anchored), a.prefix(2));
}

TEST(KinematicClip, AllViolatingKeepsTwoPoints) {
  const Trajectory t = from_steps(Point2d(0, 0), accelerating_steps(1, 50, 10));
  EXPECT_EQ(kinematic_clip(t, KinematicConfig{}).size(), 2);
}

TEST(KinematicClip, PrefixAndIdempotent) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> step(0.8, 1.2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> steps;
    for (int i = 0; i < 30; ++i) steps.push_back(step(rng));
    const Trajectory t = from_steps(Point2d(0, 0), steps);
    const Trajectory c = kinematic_clip(t, KinematicConfig{});
    ASSERT_LE(c.size(), t.size());
    EXPECT_EQ(c, t.prefix(c.size()));
    EXPECT_EQ(kinematic_clip(c, KinematicConfig{}), c);
  }
}

TEST(KinematicClip, PassingWindowOfOneKeepsEverything) {
  KinematicConfig cfg;
  cfg.window = 1;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> step(0.98, 1.02);
  int passing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // Two acceleration samples: a window of one then covers every sample.
    const Trajectory t = from_steps(Point2d(0, 0), {step(rng), step(rng), step(rng)});
    if (kinematic_window_check(t, cfg).pass) {
      ++passing;
      EXPECT_EQ(kinematic_clip(t, cfg), t);
    }
  }
  EXPECT_GT(passing, 0);
}

TEST(Displacement, Examples) {
  EXPECT_EQ(displacement_vector(line(Point2d(0, 0), Point2d(1, 0), 31)), Point2d(30, 0));
  EXPECT_EQ(displacement_vector(traj({{0, 0}, {1, 0}, {1, 1}, {0, 0}})), Point2d(0, 0));
  const Trajectory t = traj({{0, 0}, {2, 1}, {3, 5}});
  const Trajectory shifted(t.points().colwise() + Point2d(4, -9), 0.1);
  EXPECT_EQ(displacement_vector(shifted), displacement_vector(t));
}

TEST(PredictionSet, Validation) {
  PredictionSet p{"s", {traj({{0, 0}, {1, 0}}), traj({{0, 0}, {1, 0}, {2, 0}})}, {}, {}};
  EXPECT_THROW(p.validate(), Error);
  p.modes.pop_back();
  p.modes.push_back(traj({{0, 0}, {0, 1}}));
  EXPECT_NO_THROW(p.validate());
  p.probabilities = std::vector<double>{0.5, 0.4};
  EXPECT_THROW(p.validate(), Error);
  p.probabilities = std::vector<double>{0.5, 0.5};
  EXPECT_NO_THROW(p.validate());
}

}  // namespace
}  // namespace trajbench
