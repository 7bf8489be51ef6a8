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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "trajbench/bench.hpp"
#include "trajbench/synth.hpp"

namespace trajbench {
namespace {

ScenarioTag tag(Difficulty d, RoadStructure s = RoadStructure::kCruising,
                LengthClass l = LengthClass::kShort) {
  return ScenarioTag{s, d, l};
}

struct BuiltRun {
  EvaluationRun run;
  std::map<std::string, ScenarioTag> tags;
};

/// One scenario per (difficulty, value) pair with a single metric "minFDE".
BuiltRun run_with(const std::vector<std::pair<Difficulty, double>>& rows, const std::string& model = "m") {
  BuiltRun b;
  b.run.model_name = model;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string id = "s" + std::to_string(i);
    ScenarioResult r;
    r.tag = tag(rows[i].first);
    r.values[std::string(metric::kMinFde)] = rows[i].second;
    r.triad = TriadResult{{true}, {true}, {true}, {true}, 1.0};
    b.run.per_scenario[id] = r;
    b.tags[id] = r.tag;
  }
  return b;
}

TEST(Aggregate, EqualWeightsAverageLevelMeans) {
  const auto b = run_with({{Difficulty::kHard, 2.0}, {Difficulty::kMiddle, 1.0}, {Difficulty::kEasy, 1.0}});
  const auto r = aggregate(b.run, b.tags, WeightConfig{});
  EXPECT_NEAR(r.overall.at("minFDE"), 4.0 / 3.0, 1e-15);
}

TEST(Aggregate, HardOnlyWeights) {
  const auto b = run_with({{Difficulty::kHard, 2.0}, {Difficulty::kHard, 4.0}, {Difficulty::kEasy, 1.0}});
  const auto r = aggregate(b.run, b.tags, WeightConfig{1.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(r.overall.at("minFDE"), 3.0);
}

TEST(Aggregate, UnbalancedLevelsUseLevelMeansNotGlobalMean) {
  std::vector<std::pair<Difficulty, double>> rows{{Difficulty::kHard, 10.0}};
  for (int i = 0; i < 9; ++i) rows.push_back({Difficulty::kEasy, 1.0});
  rows.push_back({Difficulty::kMiddle, 4.0});
  const auto b = run_with(rows);
  const auto r = aggregate(b.run, b.tags, WeightConfig{});
  EXPECT_NEAR(r.overall.at("minFDE"), (10.0 + 4.0 + 1.0) / 3.0, 1e-12);
  EXPECT_GT(std::abs(r.overall.at("minFDE") - (10.0 + 4.0 + 9.0) / 11.0), 1.0);
}

TEST(Aggregate, EmptyCategoriesAreMarked) {
  const auto b = run_with({{Difficulty::kHard, 2.0}});
  const auto r = aggregate(b.run, b.tags, WeightConfig{});
  EXPECT_EQ(r.per_category.size(), 12u);
  EXPECT_FALSE(r.per_category.at("CRUISING/HARD/SHORT").empty());
  EXPECT_TRUE(r.per_category.at("TURN/EASY/LONG").empty());
  EXPECT_TRUE(r.per_category.at("TURN/EASY/LONG").metrics.empty());
}

TEST(Aggregate, PerCategoryMeansMatchRecomputation) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::uniform_int_distribution<int> cat(0, 11);
  EvaluationRun run;
  run.model_name = "rand";
  std::map<std::string, ScenarioTag> tags;
  for (int i = 0; i < 500; ++i) {
    ScenarioResult r;
    r.tag = all_categories()[static_cast<std::size_t>(cat(rng))];
    for (const auto& m : metric_names()) r.values[m] = u(rng);
    r.triad = TriadResult{{true, false}, {true, true}, {false, true}, {false, false}, 0.0};
    const std::string id = "r" + std::to_string(i);
    run.per_scenario[id] = r;
    tags[id] = r.tag;
  }
  const auto rep = aggregate(run, tags, WeightConfig{});
  for (const auto& c : all_categories()) {
    for (const auto& m : metric_names()) {
      double sum = 0.0;
      int n = 0;
      for (const auto& [id, r] : run.per_scenario) {
        if (r.tag == c) {
          sum += r.values.at(m);
          ++n;
        }
      }
      if (n == 0) continue;
      EXPECT_NEAR(rep.per_category.at(c.key()).metrics.at(m).mean(), sum / n, 1e-12);
    }
  }
  EXPECT_DOUBLE_EQ(rep.att_ablation.boundary, 0.5);
  EXPECT_DOUBLE_EQ(rep.att_ablation.alignment, 1.0);
  EXPECT_DOUBLE_EQ(rep.att_ablation.kinematic, 0.5);
  EXPECT_DOUBLE_EQ(rep.att_ablation.att, 0.0);
  EXPECT_EQ(rep.att_ablation.modes, 1000u);
}

TEST(Aggregate, MissingTagIsDataConsistency) {
  auto b = run_with({{Difficulty::kHard, 2.0}});
  b.tags.clear();
  EXPECT_THROW(aggregate(b.run, b.tags, WeightConfig{}), Error);
}

std::vector<MetricReport> reports_for(const std::vector<std::pair<std::string, double>>& v) {
  std::vector<MetricReport> out;
  for (const auto& [model, x] : v) {
    const auto b = run_with({{Difficulty::kHard, x}, {Difficulty::kMiddle, x}, {Difficulty::kEasy, x}}, model);
    out.push_back(aggregate(b.run, b.tags, WeightConfig{}));
  }
  return out;
}

TEST(Rank, CompetitionRankingLowerIsBetter) {
  const auto reps = reports_for({{"TNT", 1.73}, {"LaneGCN", 1.08}, {"HiVT", 0.96}, {"FTGN", 1.08}, {"MMTrans", 1.08}});
  const auto r = rank(reps, metric::kMinFde);
  EXPECT_EQ(r, (std::map<std::string, int>{{"TNT", 5}, {"LaneGCN", 2}, {"HiVT", 1}, {"FTGN", 2}, {"MMTrans", 2}}));
}

TEST(Rank, SingleAndAllEqual) {
  EXPECT_EQ(rank(reports_for({{"only", 3.0}}), metric::kMinFde).at("only"), 1);
  for (const auto& [m, r] : rank(reports_for({{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}), metric::kMinFde)) {
    EXPECT_EQ(r, 1) << m;
  }
}

TEST(Rank, HigherIsBetterDirection) {
  const std::vector<std::optional<double>> v{3.0, 1.0, 2.0, std::nullopt};
  const auto r = competition_rank(v, false);
  EXPECT_EQ(r[0], 1);
  EXPECT_EQ(r[1], 3);
  EXPECT_EQ(r[2], 2);
  EXPECT_FALSE(r[3].has_value());
  EXPECT_TRUE(lower_is_better("minADE"));
  EXPECT_FALSE(lower_is_better("AAE"));
  EXPECT_THROW(lower_is_better("bogus"), Error);
}

TEST(Rank, InvariantUnderMonotoneTransformAndOrder) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> u(0, 6);
    std::vector<std::optional<double>> v;
    for (int i = 0; i < 8; ++i) v.push_back(0.5 * u(rng));
    std::vector<std::optional<double>> t;
    for (const auto& x : v) t.push_back(std::exp(3.0 * *x) + 7.0);
    EXPECT_EQ(competition_rank(v, true), competition_rank(t, true));
    auto perm = v;
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t i = 0; i < idx.size(); ++i) perm[i] = v[static_cast<std::size_t>(idx[i])];
    const auto base = competition_rank(v, true), shuffled = competition_rank(perm, true);
    for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(shuffled[i], base[static_cast<std::size_t>(idx[i])]);
  }
}

TEST(Rank, MissingMetricIsAnError) {
  auto reps = reports_for({{"a", 1.0}, {"b", 2.0}});
  reps[1].overall.erase("minFDE");
  EXPECT_THROW(rank(reps, metric::kMinFde), Error);
}

TEST(CategoryFilter, Parse) {
  EXPECT_EQ(CategoryFilter::parse("all").key(), "*/*/*");
  EXPECT_EQ(CategoryFilter::parse("challenging").key(), "TURN/HARD/LONG");
  EXPECT_EQ(CategoryFilter::parse("turn/*/long").key(), "TURN/*/LONG");
  EXPECT_THROW(CategoryFilter::parse("turn"), Error);
  EXPECT_THROW(CategoryFilter::parse("x/y/z"), Error);
}

MetricReport balance_report(const std::string& model, double shift) {
  EvaluationRun run;
  run.model_name = model;
  std::map<std::string, ScenarioTag> tags;
  int i = 0;
  for (const auto& c : all_categories()) {
    ScenarioResult r;
    r.tag = c;
    r.values = {{"AAE", 10.0 + shift + i}, {"AMV", 1.0 + i}, {"ATT", 0.5}, {"minFDE", 1.0 + shift}};
    const std::string id = "c" + std::to_string(i++);
    run.per_scenario[id] = r;
    tags[id] = c;
  }
  return aggregate(run, tags, WeightConfig{});
}

TEST(BalanceData, Examples) {
  const std::vector<MetricReport> reps{balance_report("a", 0.0), balance_report("b", 1.0)};
  const auto all = balance_data(reps, DiversityMetric::kAae, CategoryFilter{});
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].model, "a");
  EXPECT_DOUBLE_EQ(all[0].min_fde, 1.0);
  EXPECT_DOUBLE_EQ(all[1].att, 0.5);
  const auto hard = balance_data(reps, DiversityMetric::kAae, CategoryFilter::parse("challenging"));
  for (std::size_t m = 0; m < reps.size(); ++m) {
    EXPECT_DOUBLE_EQ(hard[m].diversity, reps[m].per_category.at("TURN/HARD/LONG").metrics.at("AAE").mean());
  }
  EvaluationRun empty_run;
  empty_run.model_name = "e";
  const std::vector<MetricReport> none{aggregate(empty_run, {}, WeightConfig{})};
  EXPECT_TRUE(balance_data(none, DiversityMetric::kAmv, CategoryFilter{}).empty());
}

struct SynthFixture {
  RoadMap map;
  std::vector<ScenarioRecord> records;
  MapSet maps;
  TagSet tags;

  explicit SynthFixture(MapKind kind, int n = 16) : map(make(kind, n)) {
    SynthSpec spec;
    spec.kind = kind;
    spec.n_scenarios = n;
    records = gen_scenarios(map, spec);
    maps.emplace(map.map_id(), map);
    MinFdeTable table;
    for (const auto& r : records) table[r.id] = {1.0};
    tags = tag_all(records, maps, table, ScenarioConfig{});
  }

  static RoadMap make(MapKind kind, int n) {
    SynthSpec spec;
    spec.kind = kind;
    spec.n_scenarios = n;
    return gen_map(spec);
  }

  std::vector<PredictionSet> predict(ToyPredictor kind, int k = 6) const {
    std::vector<PredictionSet> out;
    for (const auto& r : records) out.push_back(toy_predict(kind, r, map, k, 0));
    return out;
  }
};

ErrorKind eval_error(const SynthFixture& f, const std::vector<PredictionSet>& preds) {
  try {
    evaluate_model("m", f.records, f.maps, preds, f.tags, RunConfig{}, 1);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInvariant;
}

TEST(EvaluateModel, ConsistencyErrors) {
  const SynthFixture f(MapKind::kStraight, 6);
  auto preds = f.predict(ToyPredictor::kConstVel);

  auto missing = preds;
  missing.pop_back();
  try {
    evaluate_model("m", f.records, f.maps, missing, f.tags, RunConfig{}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDataConsistency);
    EXPECT_NE(std::string(e.what()).find(f.records.back().id), std::string::npos);
  }

  auto dup = preds;
  dup.push_back(preds.front());
  EXPECT_EQ(eval_error(f, dup), ErrorKind::kDataConsistency);

  auto short_k = preds;
  short_k[2].modes.erase(short_k[2].modes.begin() + 3, short_k[2].modes.end());
  EXPECT_EQ(eval_error(f, short_k), ErrorKind::kShape);

  auto one = preds;
  for (auto& p : one) p.modes.erase(p.modes.begin() + 1, p.modes.end());
  EXPECT_EQ(eval_error(f, one), ErrorKind::kShape);

  auto short_t = preds;
  for (auto& m : short_t[0].modes) m = m.prefix(10);
  EXPECT_EQ(eval_error(f, short_t), ErrorKind::kShape);

  auto wrong_dt = preds;
  for (auto& m : wrong_dt[1].modes) m = Trajectory(m.points(), 0.2);
  EXPECT_EQ(eval_error(f, wrong_dt), ErrorKind::kShape);
}

TEST(EvaluateModel, ConstVelOnStraightRoads) {
  const SynthFixture f(MapKind::kStraight);
  const auto run = evaluate_model("cv", f.records, f.maps, f.predict(ToyPredictor::kConstVel), f.tags,
                                  RunConfig{}, 2);
  ASSERT_EQ(run.per_scenario.size(), f.records.size());
  for (const auto& [id, r] : run.per_scenario) {
    EXPECT_EQ(r.triad.att_rate, 1.0) << id;
    EXPECT_EQ(r.values.at("ATT"), 1.0);
    EXPECT_EQ(r.values.at("AAE"), 0.0);
    EXPECT_EQ(r.values.at("AMV"), 0.0);
    EXPECT_EQ(r.values.at("DAC"), 1.0);
    EXPECT_EQ(r.values.size(), metric_names().size());
  }
}

TEST(EvaluateModel, IndependentOfThreadCountAndOrder) {
  const SynthFixture f(MapKind::kTIntersection, 24);
  const auto preds = f.predict(ToyPredictor::kLaneFan);
  const auto one = evaluate_model("lf", f.records, f.maps, preds, f.tags, RunConfig{}, 1);
  const auto four = evaluate_model("lf", f.records, f.maps, preds, f.tags, RunConfig{}, 4);
  auto rev_records = f.records;
  std::reverse(rev_records.begin(), rev_records.end());
  auto rev_preds = preds;
  std::reverse(rev_preds.begin(), rev_preds.end());
  const auto rev = evaluate_model("lf", rev_records, f.maps, rev_preds, f.tags, RunConfig{}, 3);
  for (const auto& [id, r] : one.per_scenario) {
    EXPECT_EQ(r.values, four.per_scenario.at(id).values);
    EXPECT_EQ(r.values, rev.per_scenario.at(id).values);
    EXPECT_EQ(r.triad.admissible, four.per_scenario.at(id).triad.admissible);
  }
  const auto a = aggregate(one, f.tags.tags, WeightConfig{});
  const auto b = aggregate(rev, f.tags.tags, WeightConfig{});
  EXPECT_EQ(a.overall, b.overall);
}

TEST(WeightConfig, RejectsAllZero) {
  EXPECT_THROW((WeightConfig{0.0, 0.0, 0.0}.validate()), Error);
  EXPECT_THROW((WeightConfig{-1.0, 1.0, 1.0}.validate()), Error);
}

}  // namespace
}  // namespace trajbench
