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

#include "trajbench/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace trajbench::io {
namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kSchema, path + ": " + what);
}

std::string child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

std::string child(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  return j;
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

const Json& field(const Json& obj, std::string_view key, const std::string& path) {
  require_object(obj, path);
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(child(path, key), "missing required field");
  return *it;
}

const Json* optional_field(const Json& obj, std::string_view key) {
  const auto it = obj.find(key);
  return (it == obj.end() || it->is_null()) ? nullptr : &*it;
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema_error(path, "expected a finite number");
  return v;
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) schema_error(path, "expected a boolean");
  return j.get<bool>();
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<int>();
}

Point2d get_point(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected an [x, y] pair");
  return {get_number(j[0], child(path, 0)), get_number(j[1], child(path, 1))};
}

Points2d get_points(const Json& j, const std::string& path, std::size_t min_count) {
  require_array(j, path);
  if (j.size() < min_count) {
    schema_error(path, "expected at least " + std::to_string(min_count) + " points, got " +
                           std::to_string(j.size()));
  }
  Points2d out(2, static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = get_point(j[i], child(path, i));
  }
  return out;
}

Json points_to_json(const Points2d& pts) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < pts.cols(); ++i) out.push_back({pts(0, i), pts(1, i)});
  return out;
}

/// Runs `make`, turning library validation failures into schema errors at
/// `path`.
template <typename F>
auto at_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSchema) throw;
    schema_error(path, e.what());
  }
}

template <typename Enum>
Enum get_enum(const Json& j, const std::string& path, Enum (*parse)(std::string_view)) {
  const std::string s = get_string(j, path);
  return at_path(path, [&] { return parse(s); });
}

AmvReduction amv_reduction_from_string(std::string_view s) {
  if (s == "SUM") return AmvReduction::kSum;
  if (s == "MEAN") return AmvReduction::kMean;
  throw Error(ErrorKind::kInvalidArgument, "expected SUM or MEAN");
}

AngleUnit angle_unit_from_string(std::string_view s) {
  if (s == "DEGREES") return AngleUnit::kDegrees;
  if (s == "RADIANS") return AngleUnit::kRadians;
  throw Error(ErrorKind::kInvalidArgument, "expected DEGREES or RADIANS");
}

StationaryPolicy stationary_policy_from_string(std::string_view s) {
  if (s == "PASS") return StationaryPolicy::kPass;
  if (s == "FAIL") return StationaryPolicy::kFail;
  throw Error(ErrorKind::kInvalidArgument, "expected PASS or FAIL");
}

Json tag_to_json(const ScenarioTag& t) {
  return {{"structure", to_string(t.structure)},
          {"difficulty", to_string(t.difficulty)},
          {"length", to_string(t.length)}};
}

ScenarioTag tag_from_json(const Json& j, const std::string& path) {
  return {get_enum(field(j, "structure", path), child(path, "structure"), &structure_from_string),
          get_enum(field(j, "difficulty", path), child(path, "difficulty"), &difficulty_from_string),
          get_enum(field(j, "length", path), child(path, "length"), &length_from_string)};
}

Json bools_to_json(const std::vector<bool>& v) {
  Json out = Json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

std::vector<bool> bools_from_json(const Json& j, const std::string& path) {
  require_array(j, path);
  std::vector<bool> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_bool(j[i], child(path, i)));
  return out;
}

void read_number(const Json& obj, std::string_view key, const std::string& path, double& out) {
  if (const Json* v = optional_field(obj, key)) out = get_number(*v, child(path, key));
}

void read_int(const Json& obj, std::string_view key, const std::string& path, int& out) {
  if (const Json* v = optional_field(obj, key)) out = get_int(*v, child(path, key));
}

const char* to_string(AmvReduction r) { return r == AmvReduction::kSum ? "SUM" : "MEAN"; }
const char* to_string(AngleUnit u) { return u == AngleUnit::kDegrees ? "DEGREES" : "RADIANS"; }
const char* to_string(StationaryPolicy p) { return p == StationaryPolicy::kPass ? "PASS" : "FAIL"; }

}  // namespace

// --- maps -------------------------------------------------------------------

Json map_to_json(const RoadMap& map) {
  Json lanes = Json::array();
  for (const auto& l : map.lanes()) {
    Json succ = Json::array();
    for (const auto& s : l.successors) succ.push_back(s);
    lanes.push_back({{"id", l.id},
                     {"centerline", points_to_json(l.centerline.points())},
                     {"polygon", points_to_json(l.polygon.ring())},
                     {"turn", to_string(l.turn)},
                     {"is_intersection", l.is_intersection},
                     {"successors", succ},
                     {"left_neighbor", l.left_neighbor ? Json(*l.left_neighbor) : Json(nullptr)},
                     {"right_neighbor", l.right_neighbor ? Json(*l.right_neighbor) : Json(nullptr)}});
  }
  Json drivable = Json::array();
  for (const auto& p : map.drivable()) drivable.push_back(points_to_json(p.ring()));
  return {{"map_id", map.map_id()}, {"lanes", lanes}, {"drivable_area", drivable}};
}

RoadMap map_from_json(const Json& j, const std::string& path) {
  require_object(j, path);
  const std::string map_id = get_string(field(j, "map_id", path), child(path, "map_id"));
  const std::string lanes_path = child(path, "lanes");
  const Json& lanes_json = require_array(field(j, "lanes", path), lanes_path);
  std::vector<LaneSegment> lanes;
  for (std::size_t i = 0; i < lanes_json.size(); ++i) {
    const std::string lp = child(lanes_path, i);
    const Json& lj = require_object(lanes_json[i], lp);
    const std::string id = get_string(field(lj, "id", lp), child(lp, "id"));
    Points2d centre = get_points(field(lj, "centerline", lp), child(lp, "centerline"), 2);
    Points2d ring = get_points(field(lj, "polygon", lp), child(lp, "polygon"), 3);
    const TurnDirection turn =
        get_enum(field(lj, "turn", lp), child(lp, "turn"), &turn_from_string);
    const bool inter = get_bool(field(lj, "is_intersection", lp), child(lp, "is_intersection"));
    std::vector<std::string> successors;
    const std::string sp = child(lp, "successors");
    const Json& sj = require_array(field(lj, "successors", lp), sp);
    for (std::size_t k = 0; k < sj.size(); ++k) successors.push_back(get_string(sj[k], child(sp, k)));
    std::optional<std::string> left, right;
    if (const Json* v = optional_field(lj, "left_neighbor")) left = get_string(*v, child(lp, "left_neighbor"));
    if (const Json* v = optional_field(lj, "right_neighbor")) right = get_string(*v, child(lp, "right_neighbor"));
    lanes.push_back(LaneSegment{
        id, at_path(child(lp, "centerline"), [&] { return Polyline<double>(std::move(centre)); }),
        at_path(child(lp, "polygon"), [&] { return Polygon<double>(ring); }), turn, inter,
        std::move(successors), std::move(left), std::move(right)});
  }
  const std::string dp = child(path, "drivable_area");
  const Json& dj = require_array(field(j, "drivable_area", path), dp);
  std::vector<Polygon<double>> drivable;
  for (std::size_t i = 0; i < dj.size(); ++i) {
    const Points2d ring = get_points(dj[i], child(dp, i), 3);
    drivable.push_back(at_path(child(dp, i), [&] { return Polygon<double>(ring); }));
  }
  return at_path(path, [&] { return RoadMap(map_id, std::move(lanes), std::move(drivable)); });
}

MapSet maps_from_json(const Json& j) {
  MapSet out;
  const auto add = [&](RoadMap m, const std::string& path) {
    const std::string id = m.map_id();
    if (!out.emplace(id, std::move(m)).second) schema_error(path, "duplicate map_id '" + id + "'");
  };
  require_object(j, "$");
  if (j.contains("maps")) {
    const Json& arr = require_array(j["maps"], "$.maps");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      add(map_from_json(arr[i], child("$.maps", i)), child("$.maps", i));
    }
  } else {
    add(map_from_json(j, "$"), "$");
  }
  return out;
}

// --- scenarios --------------------------------------------------------------

Json scenarios_to_json(const std::vector<ScenarioRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) {
    arr.push_back({{"id", r.id},
                   {"map_id", r.map_id},
                   {"agent_id", r.agent_id},
                   {"dt", r.dt},
                   {"past", points_to_json(r.past.points())},
                   {"future", points_to_json(r.future.points())}});
  }
  return {{"scenarios", arr}};
}

std::vector<ScenarioRecord> scenarios_from_json(const Json& j) {
  const Json& arr = require_array(field(j, "scenarios", "$"), "$.scenarios");
  std::vector<ScenarioRecord> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = child("$.scenarios", i);
    const Json& r = require_object(arr[i], p);
    const std::string id = get_string(field(r, "id", p), child(p, "id"));
    if (!seen.insert(id).second) {
      throw Error(ErrorKind::kDataConsistency, child(p, "id") + ": duplicate scenario id '" + id + "'");
    }
    const double dt = get_number(field(r, "dt", p), child(p, "dt"));
    if (!(dt > 0.0)) schema_error(child(p, "dt"), "must be positive");
    Points2d past = get_points(field(r, "past", p), child(p, "past"), 2);
    Points2d future = get_points(field(r, "future", p), child(p, "future"), 2);
    out.push_back(ScenarioRecord{id, get_string(field(r, "map_id", p), child(p, "map_id")),
                                 get_string(field(r, "agent_id", p), child(p, "agent_id")), dt,
                                 Trajectory(std::move(past), dt), Trajectory(std::move(future), dt)});
  }
  return out;
}

// --- predictions ------------------------------------------------------------

Json predictions_to_json(const PredictionsFile& file) {
  Json arr = Json::array();
  for (const auto& p : file.predictions) {
    Json modes = Json::array();
    for (const auto& m : p.modes) modes.push_back(points_to_json(m.points()));
    Json entry = {{"scenario_id", p.scenario_id}, {"modes", modes}};
    if (p.anchor) entry["anchor"] = {p.anchor->x(), p.anchor->y()};
    if (p.probabilities) entry["probabilities"] = *p.probabilities;
    arr.push_back(std::move(entry));
  }
  return {{"model", file.model}, {"dt", file.dt}, {"predictions", arr}};
}

PredictionsFile predictions_from_json(const Json& j) {
  PredictionsFile out;
  out.model = get_string(field(j, "model", "$"), "$.model");
  out.dt = get_number(field(j, "dt", "$"), "$.dt");
  if (!(out.dt > 0.0)) schema_error("$.dt", "must be positive");
  const Json& arr = require_array(field(j, "predictions", "$"), "$.predictions");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = child("$.predictions", i);
    const Json& e = require_object(arr[i], p);
    PredictionSet set;
    set.scenario_id = get_string(field(e, "scenario_id", p), child(p, "scenario_id"));
    if (!seen.insert(set.scenario_id).second) {
      throw Error(ErrorKind::kDataConsistency,
                  child(p, "scenario_id") + ": duplicate prediction for '" + set.scenario_id + "'");
    }
    set.anchor = get_point(field(e, "anchor", p), child(p, "anchor"));
    const std::string mp = child(p, "modes");
    const Json& modes = require_array(field(e, "modes", p), mp);
    if (modes.empty()) schema_error(mp, "expected at least one mode");
    std::size_t steps = 0;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      Points2d pts = get_points(modes[k], child(mp, k), 2);
      if (k == 0) {
        steps = static_cast<std::size_t>(pts.cols());
      } else if (static_cast<std::size_t>(pts.cols()) != steps) {
        schema_error(child(mp, k), "ragged modes array in prediction " + std::to_string(i) +
                                       ": expected " + std::to_string(steps) + " points, got " +
                                       std::to_string(pts.cols()));
      }
      set.modes.emplace_back(std::move(pts), out.dt);
    }
    if (const Json* probs = optional_field(e, "probabilities")) {
      const std::string pp = child(p, "probabilities");
      require_array(*probs, pp);
      std::vector<double> v;
      for (std::size_t k = 0; k < probs->size(); ++k) v.push_back(get_number((*probs)[k], child(pp, k)));
      set.probabilities = std::move(v);
    }
    at_path(p, [&] {
      set.validate();
      return 0;
    });
    out.predictions.push_back(std::move(set));
  }
  return out;
}

// --- minFDE tables ----------------------------------------------------------

Json minfde_to_json(const MinFdeFile& file) {
  Json table = Json::object();
  for (const auto& [id, values] : file.table) table[id] = values;
  return {{"models", file.models}, {"min_fde", table}};
}

MinFdeFile minfde_from_json(const Json& j) {
  MinFdeFile out;
  const Json& models = require_array(field(j, "models", "$"), "$.models");
  for (std::size_t i = 0; i < models.size(); ++i) out.models.push_back(get_string(models[i], child("$.models", i)));
  const Json& table = require_object(field(j, "min_fde", "$"), "$.min_fde");
  for (const auto& [id, values] : table.items()) {
    const std::string p = child("$.min_fde", id);
    require_array(values, p);
    std::vector<double> v;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double x = get_number(values[k], child(p, k));
      if (x < 0.0) schema_error(child(p, k), "minFDE must be non-negative");
      v.push_back(x);
    }
    if (!out.models.empty() && v.size() != out.models.size()) {
      throw Error(ErrorKind::kDataConsistency, p + ": expected " + std::to_string(out.models.size()) +
                                                   " model values, got " + std::to_string(v.size()));
    }
    out.table.emplace(id, std::move(v));
  }
  return out;
}

// --- configuration ----------------------------------------------------------

Json config_to_json(const RunConfig& c) {
  return {{"kinematic", {{"a_min", c.kinematic.a_min}, {"a_max", c.kinematic.a_max}, {"window", c.kinematic.window}}},
          {"alignment",
           {{"threshold_lac", c.alignment.threshold_lac},
            {"tail_steps", c.alignment.tail_steps},
            {"stationary_eps", c.alignment.stationary_eps},
            {"stationary_policy", to_string(c.alignment.stationary_policy)}}},
          {"dao", {{"cell", c.dao.cell}, {"roi_side", c.dao.roi_side}, {"scale", c.dao.scale}}},
          {"scenario",
           {{"turn_radius", c.scenario.turn_radius},
            {"alpha", {c.scenario.alpha[0], c.scenario.alpha[1], c.scenario.alpha[2]}},
            {"beta", c.scenario.beta}}},
          {"weights", {{"hard", c.weights.hard}, {"middle", c.weights.middle}, {"easy", c.weights.easy}}},
          {"amv_reduction", to_string(c.amv_reduction)},
          {"aae_unit", to_string(c.aae_unit)}};
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  require_object(j, "$");
  if (const Json* k = optional_field(j, "kinematic")) {
    require_object(*k, "$.kinematic");
    read_number(*k, "a_min", "$.kinematic", c.kinematic.a_min);
    read_number(*k, "a_max", "$.kinematic", c.kinematic.a_max);
    read_int(*k, "window", "$.kinematic", c.kinematic.window);
    at_path("$.kinematic", [&] { c.kinematic.validate(); return 0; });
  }
  if (const Json* a = optional_field(j, "alignment")) {
    require_object(*a, "$.alignment");
    read_number(*a, "threshold_lac", "$.alignment", c.alignment.threshold_lac);
    read_int(*a, "tail_steps", "$.alignment", c.alignment.tail_steps);
    read_number(*a, "stationary_eps", "$.alignment", c.alignment.stationary_eps);
    if (const Json* v = optional_field(*a, "stationary_policy")) {
      c.alignment.stationary_policy =
          get_enum(*v, "$.alignment.stationary_policy", &stationary_policy_from_string);
    }
    at_path("$.alignment", [&] { c.alignment.validate(); return 0; });
  }
  if (const Json* d = optional_field(j, "dao")) {
    require_object(*d, "$.dao");
    read_number(*d, "cell", "$.dao", c.dao.cell);
    read_number(*d, "roi_side", "$.dao", c.dao.roi_side);
    read_number(*d, "scale", "$.dao", c.dao.scale);
    at_path("$.dao", [&] { c.dao.validate(); return 0; });
  }
  if (const Json* s = optional_field(j, "scenario")) {
    require_object(*s, "$.scenario");
    read_number(*s, "turn_radius", "$.scenario", c.scenario.turn_radius);
    read_number(*s, "beta", "$.scenario", c.scenario.beta);
    if (const Json* a = optional_field(*s, "alpha")) {
      if (!a->is_array() || a->size() != 3) schema_error("$.scenario.alpha", "expected 3 fractions");
      for (std::size_t i = 0; i < 3; ++i) c.scenario.alpha[i] = get_number((*a)[i], child("$.scenario.alpha", i));
    }
    at_path("$.scenario", [&] { c.scenario.validate(); return 0; });
  }
  if (const Json* w = optional_field(j, "weights")) {
    require_object(*w, "$.weights");
    read_number(*w, "hard", "$.weights", c.weights.hard);
    read_number(*w, "middle", "$.weights", c.weights.middle);
    read_number(*w, "easy", "$.weights", c.weights.easy);
    at_path("$.weights", [&] { c.weights.validate(); return 0; });
  }
  if (const Json* v = optional_field(j, "amv_reduction")) {
    c.amv_reduction = get_enum(*v, "$.amv_reduction", &amv_reduction_from_string);
  }
  if (const Json* v = optional_field(j, "aae_unit")) {
    c.aae_unit = get_enum(*v, "$.aae_unit", &angle_unit_from_string);
  }
  at_path("$", [&] { c.validate(); return 0; });
  return c;
}

// --- tags -------------------------------------------------------------------

Json tags_to_json(const TagSet& tags, const RunConfig& cfg) {
  Json t = Json::object();
  for (const auto& [id, tag] : tags.tags) t[id] = tag_to_json(tag);
  Json counts = Json::object();
  for (const auto& [key, n] : tags.category_counts) counts[key] = n;
  return {{"config", config_to_json(cfg)}, {"tags", t}, {"category_counts", counts}};
}

TagSet tags_from_json(const Json& j) {
  TagSet out;
  if (const Json* c = optional_field(j, "config")) {
    try {
      out.config = config_from_json(*c).scenario;
    } catch (const Error& e) {
      schema_error("$.config", e.what());
    }
  }
  const Json& tags = require_object(field(j, "tags", "$"), "$.tags");
  for (const auto& c : all_categories()) out.category_counts[c.key()] = 0;
  for (const auto& [id, tj] : tags.items()) {
    const ScenarioTag tag = tag_from_json(tj, child("$.tags", id));
    out.tags.emplace(id, tag);
    ++out.category_counts[tag.key()];
  }
  return out;
}

// --- metrics ----------------------------------------------------------------

Json metrics_to_json(const EvaluationRun& run) {
  Json per = Json::object();
  for (const auto& [id, res] : run.per_scenario) {
    Json e = Json::object();
    for (const auto& [name, v] : res.values) e[name] = v;
    e["tag"] = tag_to_json(res.tag);
    e["triad"] = {{"boundary", bools_to_json(res.triad.boundary_pass)},
                  {"alignment", bools_to_json(res.triad.alignment_pass)},
                  {"kinematic", bools_to_json(res.triad.kinematic_pass)},
                  {"admissible", bools_to_json(res.triad.admissible)},
                  {"att_rate", res.triad.att_rate}};
    per[id] = std::move(e);
  }
  return {{"model", run.model_name}, {"config", config_to_json(run.config_snapshot)}, {"per_scenario", per}};
}

MetricsFile metrics_from_json(const Json& j) {
  MetricsFile out;
  out.run.model_name = get_string(field(j, "model", "$"), "$.model");
  out.run.config_snapshot = config_from_json(field(j, "config", "$"));
  const Json& per = require_object(field(j, "per_scenario", "$"), "$.per_scenario");
  for (const auto& [id, e] : per.items()) {
    const std::string p = child("$.per_scenario", id);
    require_object(e, p);
    ScenarioResult res;
    res.tag = tag_from_json(field(e, "tag", p), child(p, "tag"));
    for (const auto& [name, v] : e.items()) {
      if (name == "tag" || name == "triad") continue;
      at_path(child(p, name), [&] { return lower_is_better(name); });
      res.values[name] = get_number(v, child(p, name));
    }
    const std::string tp = child(p, "triad");
    const Json& t = field(e, "triad", p);
    res.triad.boundary_pass = bools_from_json(field(t, "boundary", tp), child(tp, "boundary"));
    res.triad.alignment_pass = bools_from_json(field(t, "alignment", tp), child(tp, "alignment"));
    res.triad.kinematic_pass = bools_from_json(field(t, "kinematic", tp), child(tp, "kinematic"));
    res.triad.admissible = bools_from_json(field(t, "admissible", tp), child(tp, "admissible"));
    res.triad.att_rate = get_number(field(t, "att_rate", tp), child(tp, "att_rate"));
    const std::size_t k = res.triad.admissible.size();
    if (res.triad.boundary_pass.size() != k || res.triad.alignment_pass.size() != k ||
        res.triad.kinematic_pass.size() != k) {
      schema_error(tp, "per-test arrays differ in length");
    }
    out.tags.emplace(id, res.tag);
    out.run.per_scenario.emplace(id, std::move(res));
  }
  return out;
}

Json report_to_json(const MetricReport& r) {
  Json cats = Json::object();
  for (const auto& [key, stats] : r.per_category) {
    if (stats.empty()) {
      cats[key] = {{"empty", true}, {"scenarios", 0}};
      continue;
    }
    Json m = Json::object();
    for (const auto& [name, s] : stats.metrics) m[name] = {{"mean", s.mean()}, {"count", s.count}};
    cats[key] = {{"empty", false}, {"scenarios", stats.scenarios}, {"metrics", m}};
  }
  Json overall = Json::object();
  for (const auto& [name, v] : r.overall) overall[name] = v;
  return {{"model", r.model},
          {"weights", {{"hard", r.weights.hard}, {"middle", r.weights.middle}, {"easy", r.weights.easy}}},
          {"overall", overall},
          {"per_category", cats},
          {"att_ablation",
           {{"boundary", r.att_ablation.boundary},
            {"kinematic", r.att_ablation.kinematic},
            {"alignment", r.att_ablation.alignment},
            {"att", r.att_ablation.att},
            {"modes", r.att_ablation.modes}}}};
}

void validate_references(const std::vector<ScenarioRecord>& records, const MapSet& maps,
                         const std::vector<PredictionSet>& predictions) {
  std::set<std::string> ids;
  std::string bad_maps, bad_preds;
  for (const auto& r : records) {
    ids.insert(r.id);
    if (!maps.contains(r.map_id)) bad_maps += " " + r.id + "->" + r.map_id;
  }
  for (const auto& p : predictions) {
    if (!ids.contains(p.scenario_id)) bad_preds += " " + p.scenario_id;
  }
  if (!bad_maps.empty()) throw Error(ErrorKind::kDataConsistency, "scenarios reference unknown maps:" + bad_maps);
  if (!bad_preds.empty()) {
    throw Error(ErrorKind::kDataConsistency, "predictions reference unknown scenarios:" + bad_preds);
  }
}

// --- files ------------------------------------------------------------------

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kSchema, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kSchema, origin + ": invalid JSON: " + e.what());
  }
}

Json read_json(const std::filesystem::path& path) { return parse_json(read_text(path), path.string()); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kInvariant, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::kInvariant, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string sha256_hex(std::string_view content) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(content.data(), content.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::kInvariant, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace trajbench::io
