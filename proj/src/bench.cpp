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

#include "trajbench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <set>
#include <thread>

namespace trajbench {
namespace {

ScenarioResult score_scenario(const ScenarioRecord& rec, const RoadMap& map,
                              const PredictionSet& pred, const ScenarioTag& tag,
                              const RunConfig& cfg) {
  const Point2d anchor = pred.anchor.value_or(rec.last_observed());
  KinematicConfig kin = cfg.kinematic;
  kin.anchor = anchor;

  ScenarioResult out;
  out.tag = tag;
  auto& v = out.values;
  v[std::string(metric::kMinAde)] = min_ade(pred, rec.future);
  v[std::string(metric::kMinFde)] = min_fde(pred, rec.future);
  v[std::string(metric::kRf)] = rf(pred, rec.future);
  v[std::string(metric::kMinAsd)] = min_asd(pred);
  v[std::string(metric::kMinFsd)] = min_fsd(pred);
  v[std::string(metric::kDac)] = dac(pred, map);
  v[std::string(metric::kDao)] = dao(pred, map, cfg.dao, anchor);
  try {
    v[std::string(metric::kAae)] = aae(pred, cfg.aae_unit);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInsufficientModes) throw;
  }
  v[std::string(metric::kAmv)] = amv(pred, kin, cfg.amv_reduction);
  out.triad = att(pred, map, cfg.alignment, kin);
  v[std::string(metric::kAtt)] = out.triad.att_rate;
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) s += " " + id;
  return s;
}

}  // namespace

double WeightConfig::weight(Difficulty d) const {
  switch (d) {
    case Difficulty::kHard: return hard;
    case Difficulty::kMiddle: return middle;
    case Difficulty::kEasy: return easy;
  }
  return 0.0;
}

void WeightConfig::validate() const {
  if (!(hard >= 0.0 && middle >= 0.0 && easy >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "weights must be non-negative");
  }
  if (hard + middle + easy == 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "weights must not all be zero");
  }
}

void RunConfig::validate() const {
  kinematic.validate();
  alignment.validate();
  dao.validate();
  scenario.validate();
  weights.validate();
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> kNames = {
      std::string(metric::kMinFde), std::string(metric::kMinAde), std::string(metric::kRf),
      std::string(metric::kMinFsd), std::string(metric::kMinAsd), std::string(metric::kAae),
      std::string(metric::kAmv),    std::string(metric::kDao),    std::string(metric::kDac),
      std::string(metric::kAtt)};
  return kNames;
}

bool lower_is_better(std::string_view name) {
  if (name == metric::kMinAde || name == metric::kMinFde) return true;
  for (const auto& m : metric_names()) {
    if (m == name) return false;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("CRITERIA_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

EvaluationRun evaluate_model(const std::string& model_name,
                             const std::vector<ScenarioRecord>& records, const MapSet& maps,
                             const std::vector<PredictionSet>& predictions, const TagSet& tags,
                             const RunConfig& cfg, unsigned threads) {
  cfg.validate();
  std::map<std::string, const PredictionSet*> by_id;
  std::vector<std::string> duplicates;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.scenario_id, &p).second) duplicates.push_back(p.scenario_id);
  }
  if (!duplicates.empty()) {
    throw Error(ErrorKind::kDataConsistency, "duplicate prediction ids:" + join_ids(duplicates));
  }
  std::set<std::string> record_ids;
  std::vector<std::string> missing_pred, missing_tag, dup_records;
  for (const auto& r : records) {
    if (!record_ids.insert(r.id).second) dup_records.push_back(r.id);
    if (!by_id.contains(r.id)) missing_pred.push_back(r.id);
    if (!tags.tags.contains(r.id)) missing_tag.push_back(r.id);
  }
  if (!dup_records.empty()) {
    throw Error(ErrorKind::kDataConsistency, "duplicate scenario ids:" + join_ids(dup_records));
  }
  if (!missing_pred.empty()) {
    throw Error(ErrorKind::kDataConsistency,
                "no prediction for scenarios:" + join_ids(missing_pred));
  }
  if (!missing_tag.empty()) {
    throw Error(ErrorKind::kDataConsistency, "no tag for scenarios:" + join_ids(missing_tag));
  }
  std::vector<std::string> unknown;
  for (const auto& [id, _] : by_id) {
    if (!record_ids.contains(id)) unknown.push_back(id);
  }
  if (!unknown.empty()) {
    throw Error(ErrorKind::kDataConsistency,
                "predictions for unknown scenarios:" + join_ids(unknown));
  }

  std::optional<std::size_t> k;
  for (const auto& r : records) {
    const PredictionSet& p = *by_id.at(r.id);
    p.validate();
    if (p.k() < 2) {
      throw Error(ErrorKind::kShape, "prediction '" + r.id + "' has fewer than 2 modes");
    }
    if (k && *k != p.k()) {
      throw Error(ErrorKind::kShape, "prediction '" + r.id + "' has " + std::to_string(p.k()) +
                                         " modes, expected " + std::to_string(*k));
    }
    k = p.k();
    if (p.horizon() != r.future.size()) {
      throw Error(ErrorKind::kShape, "prediction '" + r.id + "' has " +
                                         std::to_string(p.horizon()) + " steps, ground truth has " +
                                         std::to_string(r.future.size()));
    }
    if (std::abs(p.modes.front().dt() - r.dt) > 1e-9) {
      throw Error(ErrorKind::kShape, "prediction '" + r.id + "' has dt " +
                                         std::to_string(p.modes.front().dt()) +
                                         ", ground truth has " + std::to_string(r.dt));
    }
    if (!maps.contains(r.map_id)) {
      throw Error(ErrorKind::kDataConsistency,
                  "scenario '" + r.id + "' references unknown map '" + r.map_id + "'");
    }
  }

  std::vector<std::optional<ScenarioResult>> results(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      const ScenarioRecord& r = records[i];
      try {
        results[i] = score_scenario(r, maps.find(r.map_id)->second, *by_id.at(r.id),
                                    tags.tags.at(r.id), cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(threads == 0 ? default_thread_count() : threads,
                                                             static_cast<unsigned>(records.size())));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvaluationRun run;
  run.model_name = model_name;
  run.config_snapshot = cfg;
  for (std::size_t i = 0; i < records.size(); ++i) {
    run.per_scenario.emplace(records[i].id, std::move(*results[i]));
  }
  return run;
}

MetricReport aggregate(const EvaluationRun& run, const std::map<std::string, ScenarioTag>& tags,
                       const WeightConfig& weights) {
  weights.validate();
  MetricReport out;
  out.model = run.model_name;
  out.weights = weights;
  for (const auto& c : all_categories()) out.per_category[c.key()];

  std::map<Difficulty, std::map<std::string, MetricStat>> by_level;
  std::size_t modes = 0, b = 0, k = 0, a = 0, adm = 0;
  for (const auto& [id, res] : run.per_scenario) {
    const auto t = tags.find(id);
    if (t == tags.end()) {
      throw Error(ErrorKind::kDataConsistency, "no tag for scenario '" + id + "'");
    }
    CategoryStats& cat = out.per_category[t->second.key()];
    ++cat.scenarios;
    for (const auto& [name, value] : res.values) {
      MetricStat& s = cat.metrics[name];
      s.sum += value;
      ++s.count;
      MetricStat& l = by_level[t->second.difficulty][name];
      l.sum += value;
      ++l.count;
    }
    const TriadResult& tr = res.triad;
    for (std::size_t m = 0; m < tr.admissible.size(); ++m) {
      ++modes;
      b += tr.boundary_pass[m] ? 1 : 0;
      k += tr.kinematic_pass[m] ? 1 : 0;
      a += tr.alignment_pass[m] ? 1 : 0;
      adm += tr.admissible[m] ? 1 : 0;
    }
  }
  if (modes > 0) {
    const auto n = static_cast<double>(modes);
    out.att_ablation = {static_cast<double>(b) / n, static_cast<double>(k) / n,
                        static_cast<double>(a) / n, static_cast<double>(adm) / n, modes};
  }

  for (const auto& name : metric_names()) {
    double num = 0.0, den = 0.0;
    for (Difficulty d : {Difficulty::kHard, Difficulty::kMiddle, Difficulty::kEasy}) {
      const auto lvl = by_level.find(d);
      if (lvl == by_level.end()) continue;
      const auto s = lvl->second.find(name);
      if (s == lvl->second.end() || s->second.count == 0) continue;
      num += weights.weight(d) * s->second.mean();
      den += weights.weight(d);
    }
    if (den > 0.0) out.overall[name] = num / den;
  }
  return out;
}

bool CategoryFilter::matches(const ScenarioTag& tag) const {
  return (!structure || *structure == tag.structure) &&
         (!difficulty || *difficulty == tag.difficulty) && (!length || *length == tag.length);
}

std::string CategoryFilter::key() const {
  return std::string(structure ? to_string(*structure) : "*") + "/" +
         (difficulty ? to_string(*difficulty) : "*") + "/" + (length ? to_string(*length) : "*");
}

CategoryFilter CategoryFilter::parse(std::string_view text) {
  std::string upper(text);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "ALL" || upper.empty()) return {};
  if (upper == "CHALLENGING") {
    return {RoadStructure::kTurn, Difficulty::kHard, LengthClass::kLong};
  }
  const auto a = upper.find('/');
  const auto b = a == std::string::npos ? a : upper.find('/', a + 1);
  if (b == std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "category filter must look like S/D/L: '" +
                                                 std::string(text) + "'");
  }
  const std::string s = upper.substr(0, a), d = upper.substr(a + 1, b - a - 1),
                    l = upper.substr(b + 1);
  CategoryFilter f;
  if (s != "*") f.structure = structure_from_string(s);
  if (d != "*") f.difficulty = difficulty_from_string(d);
  if (l != "*") f.length = length_from_string(l);
  return f;
}

std::optional<double> filtered_mean(const MetricReport& report, std::string_view metric_name,
                                    const CategoryFilter& filter) {
  MetricStat total;
  for (const auto& c : all_categories()) {
    if (!filter.matches(c)) continue;
    const auto cat = report.per_category.find(c.key());
    if (cat == report.per_category.end()) continue;
    const auto s = cat->second.metrics.find(std::string(metric_name));
    if (s == cat->second.metrics.end()) continue;
    total.sum += s->second.sum;
    total.count += s->second.count;
  }
  if (total.count == 0) return std::nullopt;
  return total.mean();
}

std::vector<std::optional<int>> competition_rank(const std::vector<std::optional<double>>& values,
                                                 bool lower_better) {
  std::vector<std::optional<int>> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    int better = 0;
    for (const auto& other : values) {
      if (!other) continue;
      if (lower_better ? *other < *values[i] : *other > *values[i]) ++better;
    }
    out[i] = better + 1;
  }
  return out;
}

std::map<std::string, int> rank(const std::vector<MetricReport>& reports,
                                std::string_view metric_name,
                                const std::optional<std::string>& category) {
  if (reports.empty()) throw Error(ErrorKind::kInvalidArgument, "rank needs at least one report");
  const bool lower = lower_is_better(metric_name);
  std::vector<std::optional<double>> values;
  for (const auto& r : reports) {
    std::optional<double> v;
    if (!category) {
      const auto it = r.overall.find(std::string(metric_name));
      if (it != r.overall.end()) v = it->second;
    } else {
      const auto cat = r.per_category.find(*category);
      if (cat != r.per_category.end()) {
        const auto s = cat->second.metrics.find(std::string(metric_name));
        if (s != cat->second.metrics.end() && s->second.count > 0) v = s->second.mean();
      }
    }
    if (!v) {
      throw Error(ErrorKind::kDataConsistency, "report '" + r.model + "' lacks metric '" +
                                                   std::string(metric_name) + "'" +
                                                   (category ? " in " + *category : ""));
    }
    values.push_back(v);
  }
  const auto ranks = competition_rank(values, lower);
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < reports.size(); ++i) out[reports[i].model] = *ranks[i];
  return out;
}

std::vector<BalancePoint> balance_data(const std::vector<MetricReport>& reports,
                                       DiversityMetric diversity, const CategoryFilter& subset) {
  const std::string_view div = diversity == DiversityMetric::kAae ? metric::kAae : metric::kAmv;
  std::vector<BalancePoint> out;
  for (const auto& r : reports) {
    const auto d = filtered_mean(r, div, subset);
    const auto a = filtered_mean(r, metric::kAtt, subset);
    const auto f = filtered_mean(r, metric::kMinFde, subset);
    if (!d || !a || !f) continue;
    out.push_back({r.model, *d, *a, *f});
  }
  return out;
}

}  // namespace trajbench
