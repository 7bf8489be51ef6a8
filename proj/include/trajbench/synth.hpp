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

// Deterministic desk-scale fixtures: road maps, ground-truth scenarios and
// toy predictors.
//
// Randomness: std::mt19937_64 with explicit uniform and Box-Muller transforms.
// Per-stream seeds come from derive_seed().

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "trajbench/map_model.hpp"
#include "trajbench/scenario.hpp"
#include "trajbench/trajectory.hpp"

namespace trajbench {

enum class MapKind { kStraight, kTIntersection, kCrossroads };
enum class ToyPredictor { kConstVel, kLaneFan, kNoisy };

const char* to_string(MapKind kind);
MapKind map_kind_from_string(std::string_view s);
const char* to_string(ToyPredictor kind);
ToyPredictor toy_predictor_from_string(std::string_view s);

/// Lane polygons are dilated by this much to form the drivable area.
inline constexpr double kDrivableMargin = 0.3;

struct SynthSpec {
  MapKind kind = MapKind::kStraight;
  int lanes_per_direction = 2;
  double lane_width = 3.7;
  std::uint64_t seed = 0;
  int n_scenarios = 10;
  double dt = 0.1;
  int past_steps = 20;
  int future_steps = 30;

  void validate() const;
};

std::uint64_t splitmix64(std::uint64_t x);
/// Seed for an independent stream: splitmix64(base ^ splitmix64(stream)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);
/// 64-bit FNV-1a, used to turn scenario ids into stream numbers.
std::uint64_t fnv1a64(std::string_view s);

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits of one draw.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, n).
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }
  /// Standard normal via Box-Muller; consumes two draws per call.
  double normal();

 private:
  std::mt19937_64 engine_;
};

RoadMap gen_map(const SynthSpec& spec);

std::vector<ScenarioRecord> gen_scenarios(const RoadMap& map, const SynthSpec& spec);

PredictionSet toy_predict(ToyPredictor kind, const ScenarioRecord& rec, const RoadMap& map, int k,
                          std::uint64_t seed, double noise_sigma = 1.0);

}  // namespace trajbench
