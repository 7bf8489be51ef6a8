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

// Evaluation runs: per-scenario metrics for one model, per-category and
// difficulty-weighted aggregation, cross-model ranking and balance-chart data.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajbench/metrics.hpp"
#include "trajbench/scenario.hpp"

namespace trajbench {

struct WeightConfig {
  double hard = 1.0;
  double middle = 1.0;
  double easy = 1.0;

  double weight(Difficulty d) const;
  void validate() const;
};

/// Every knob that influences a run; serialized verbatim into outputs.
struct RunConfig {
  KinematicConfig kinematic;
  AlignmentConfig alignment;
  DaoConfig dao;
  ScenarioConfig scenario;
  WeightConfig weights;
  AmvReduction amv_reduction = AmvReduction::kSum;
  AngleUnit aae_unit = AngleUnit::kDegrees;

  void validate() const;
};

namespace metric {
inline constexpr std::string_view kMinFde = "minFDE";
inline constexpr std::string_view kMinAde = "minADE";
inline constexpr std::string_view kRf = "RF";
inline constexpr std::string_view kMinFsd = "minFSD";
inline constexpr std::string_view kMinAsd = "minASD";
inline constexpr std::string_view kAae = "AAE";
inline constexpr std::string_view kAmv = "AMV";
inline constexpr std::string_view kDao = "DAO";
inline constexpr std::string_view kDac = "DAC";
inline constexpr std::string_view kAtt = "ATT";
}  // namespace metric

/// Report column order.
const std::vector<std::string>& metric_names();
/// Fixed direction registry; throws kInvalidArgument for unknown names.
bool lower_is_better(std::string_view metric_name);

struct ScenarioResult {
  ScenarioTag tag;
  /// A metric that is undefined for the scenario (e.g. AAE with fewer than two
  /// moving modes) is absent.
  std::map<std::string, double> values;
  TriadResult triad;
};

struct EvaluationRun {
  std::string model_name;
  std::map<std::string, ScenarioResult> per_scenario;
  RunConfig config_snapshot;
};

/// Worker count: CRITERIA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
unsigned default_thread_count();

/// Scores every record against its prediction. Throws kDataConsistency for
/// missing, duplicate or unknown ids and kShape for K/T mismatches.
EvaluationRun evaluate_model(const std::string& model_name,
                             const std::vector<ScenarioRecord>& records, const MapSet& maps,
                             const std::vector<PredictionSet>& predictions, const TagSet& tags,
                             const RunConfig& cfg, unsigned threads = 0);

struct MetricStat {
  double sum = 0.0;
  std::size_t count = 0;
  double mean() const { return sum / static_cast<double>(count); }
};

struct CategoryStats {
  std::size_t scenarios = 0;
  std::map<std::string, MetricStat> metrics;
  bool empty() const { return scenarios == 0; }
};

struct AttAblation {
  double boundary = 0.0;
  double kinematic = 0.0;
  double alignment = 0.0;
  double att = 0.0;
  std::size_t modes = 0;
};

struct MetricReport {
  std::string model;
  WeightConfig weights;
  /// Keyed by ScenarioTag::key(); all 12 categories present, empty ones
  /// flagged by CategoryStats::empty().
  std::map<std::string, CategoryStats> per_category;
  /// Difficulty-weighted means; a metric with no data at any level is absent.
  std::map<std::string, double> overall;
  AttAblation att_ablation;
};

MetricReport aggregate(const EvaluationRun& run, const std::map<std::string, ScenarioTag>& tags,
                       const WeightConfig& weights);

/// Matches categories on each axis; nullopt is a wildcard.
struct CategoryFilter {
  std::optional<RoadStructure> structure;
  std::optional<Difficulty> difficulty;
  std::optional<LengthClass> length;

  bool matches(const ScenarioTag& tag) const;
  std::string key() const;
  /// "all", "challenging" (TURN/HARD/LONG) or "S/D/L" with '*' wildcards,
  /// case-insensitive.
  static CategoryFilter parse(std::string_view text);
};

/// Scenario-weighted mean of a metric over the categories matching filter.
std::optional<double> filtered_mean(const MetricReport& report, std::string_view metric_name,
                                    const CategoryFilter& filter);

/// Competition ranking ("1224"); nullopt entries stay unranked.
std::vector<std::optional<int>> competition_rank(const std::vector<std::optional<double>>& values,
                                                 bool lower_better);

/// Rank of each model on one metric, overall when category is nullopt.
/// Throws kDataConsistency when a report lacks the metric.
std::map<std::string, int> rank(const std::vector<MetricReport>& reports,
                                std::string_view metric_name,
                                const std::optional<std::string>& category = std::nullopt);

enum class DiversityMetric { kAae, kAmv };

struct BalancePoint {
  std::string model;
  double diversity = 0.0;
  double att = 0.0;
  double min_fde = 0.0;
};

/// One point per model with data in the subset.
std::vector<BalancePoint> balance_data(const std::vector<MetricReport>& reports,
                                       DiversityMetric diversity, const CategoryFilter& subset);

}  // namespace trajbench
