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

#include "trajbench/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace trajbench {
namespace {

constexpr double kStraightHalfLength = 200.0;  // m
constexpr double kJunctionMargin = 8.0;        // m between road edge and lane stubs
constexpr double kArmLength = 150.0;           // m
constexpr int kArcSegments = 16;
constexpr double kMinSpeed = 5.0;   // m/s
constexpr double kMaxSpeed = 15.0;  // m/s
constexpr double kFanSpeedFactors[] = {1.0, 0.8, 1.2, 0.9, 1.1, 0.7, 1.3};

Point2d right_normal(const Point2d& u) { return {u.y(), -u.x()}; }

Points2d make_points(const std::vector<Point2d>& pts) {
  Points2d out(2, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = pts[i];
  return out;
}

/// Ribbon of half-width `half_width` around a centerline, extended by `extend`
/// past both ends. Interior vertices use mitred offsets.
Polygon<double> strip_polygon(const Points2d& c, double half_width, double extend) {
  const Eigen::Index n = c.cols();
  std::vector<Point2d> left, right;
  for (Eigen::Index i = 0; i < n; ++i) {
    Point2d tangent;
    double scale = 1.0;
    if (i == 0) {
      tangent = (c.col(1) - c.col(0)).normalized();
    } else if (i == n - 1) {
      tangent = (c.col(n - 1) - c.col(n - 2)).normalized();
    } else {
      const Point2d t0 = (c.col(i) - c.col(i - 1)).normalized();
      const Point2d t1 = (c.col(i + 1) - c.col(i)).normalized();
      tangent = (t0 + t1).normalized();
      scale = 1.0 / std::max(0.2, tangent.dot(t1));
    }
    Point2d base = c.col(i);
    if (i == 0) base -= extend * tangent;
    if (i == n - 1) base += extend * tangent;
    const Point2d offset = -right_normal(tangent) * half_width * scale;  // left side
    left.push_back(base + offset);
    right.push_back(base - offset);
  }
  std::vector<Point2d> ring = left;
  ring.insert(ring.end(), right.rbegin(), right.rend());
  return Polygon<double>(make_points(ring));
}

struct LaneDraft {
  std::string id;
  Points2d centerline;
  TurnDirection turn = TurnDirection::kNone;
  bool is_intersection = false;
  std::vector<std::string> successors;
  std::optional<std::string> left, right;
};

RoadMap assemble(const std::string& map_id, std::vector<LaneDraft> drafts, double lane_width) {
  std::vector<LaneSegment> lanes;
  std::vector<Polygon<double>> drivable;
  for (auto& d : drafts) {
    drivable.push_back(strip_polygon(d.centerline, lane_width / 2.0 + kDrivableMargin,
                                     kDrivableMargin));
    Polygon<double> poly = strip_polygon(d.centerline, lane_width / 2.0, 0.0);
    lanes.push_back(LaneSegment{d.id, Polyline<double>(std::move(d.centerline)), std::move(poly),
                                d.turn, d.is_intersection, std::move(d.successors),
                                std::move(d.left), std::move(d.right)});
  }
  return RoadMap(map_id, std::move(lanes), std::move(drivable));
}

std::string lane_name(const std::string& prefix, int i) { return prefix + "_" + std::to_string(i); }

RoadMap straight_map(const SynthSpec& spec, const std::string& map_id) {
  std::vector<LaneDraft> drafts;
  const int n = spec.lanes_per_direction;
  for (const auto& [prefix, sign] : {std::pair<std::string, double>{"EB", 1.0}, {"WB", -1.0}}) {
    for (int i = 0; i < n; ++i) {
      LaneDraft d;
      d.id = lane_name(prefix, i);
      const double y = -sign * (i + 0.5) * spec.lane_width;
      d.centerline = make_points({{-sign * kStraightHalfLength, y}, {sign * kStraightHalfLength, y}});
      if (i > 0) d.left = lane_name(prefix, i - 1);
      if (i + 1 < n) d.right = lane_name(prefix, i + 1);
      drafts.push_back(std::move(d));
    }
  }
  return assemble(map_id, std::move(drafts), spec.lane_width);
}

struct Arm {
  std::string name;
  Point2d out;  // unit direction from the junction centre along the arm
};

Points2d connector(const Point2d& start, const Point2d& u_in, const Point2d& end,
                   const Point2d& u_out) {
  if (std::abs(u_in.x() * u_out.y() - u_in.y() * u_out.x()) < 1e-12) {
    return make_points({start, end});
  }
  // Quarter arc tangent to both lanes: the corner P lies on the incoming line,
  // and the centre completes the square S-P-E-C.
  const Point2d corner = start + (end - start).dot(u_in) * u_in;
  const Point2d centre = start + (end - corner);
  const double a0 = std::atan2(start.y() - centre.y(), start.x() - centre.x());
  const double a1 = std::atan2(end.y() - centre.y(), end.x() - centre.x());
  double sweep = a1 - a0;
  while (sweep > std::numbers::pi) sweep -= 2 * std::numbers::pi;
  while (sweep <= -std::numbers::pi) sweep += 2 * std::numbers::pi;
  const double radius = (start - centre).norm();
  std::vector<Point2d> pts{start};
  for (int k = 1; k < kArcSegments; ++k) {
    const double a = a0 + sweep * k / kArcSegments;
    pts.push_back(centre + radius * Point2d(std::cos(a), std::sin(a)));
  }
  pts.push_back(end);
  return make_points(pts);
}

RoadMap junction_map(const SynthSpec& spec, const std::string& map_id,
                     const std::vector<Arm>& arms) {
  const int n = spec.lanes_per_direction;
  const double w = spec.lane_width;
  const double near = n * w + kJunctionMargin;
  const double far = near + kArmLength;
  std::vector<LaneDraft> drafts;
  const auto in_id = [](const Arm& a, int i) { return a.name + "_in_" + std::to_string(i); };
  const auto out_id = [](const Arm& a, int i) { return a.name + "_out_" + std::to_string(i); };

  for (const Arm& arm : arms) {
    const Point2d u_in = -arm.out;
    const Point2d u_out = arm.out;
    for (int i = 0; i < n; ++i) {
      const double offset = (i + 0.5) * w;
      LaneDraft in;
      in.id = in_id(arm, i);
      in.centerline = make_points({arm.out * far + right_normal(u_in) * offset,
                                   arm.out * near + right_normal(u_in) * offset});
      if (i > 0) in.left = in_id(arm, i - 1);
      if (i + 1 < n) in.right = in_id(arm, i + 1);

      LaneDraft out;
      out.id = out_id(arm, i);
      out.centerline = make_points({arm.out * near + right_normal(u_out) * offset,
                                    arm.out * far + right_normal(u_out) * offset});
      if (i > 0) out.left = out_id(arm, i - 1);
      if (i + 1 < n) out.right = out_id(arm, i + 1);

      for (const Arm& target : arms) {
        if (&target == &arm) continue;
        const Point2d t_out = target.out;
        LaneDraft c;
        c.id = in.id + "->" + out_id(target, i);
        c.is_intersection = true;
        const double cross = u_in.x() * t_out.y() - u_in.y() * t_out.x();
        c.turn = std::abs(cross) < 1e-12 ? TurnDirection::kNone
                 : cross > 0            ? TurnDirection::kLeft
                                        : TurnDirection::kRight;
        c.centerline = connector(arm.out * near + right_normal(u_in) * offset, u_in,
                                 t_out * near + right_normal(t_out) * offset, t_out);
        c.successors.push_back(out_id(target, i));
        in.successors.push_back(c.id);
        drafts.push_back(std::move(c));
      }
      drafts.push_back(std::move(in));
      drafts.push_back(std::move(out));
    }
  }
  std::sort(drafts.begin(), drafts.end(),
            [](const LaneDraft& a, const LaneDraft& b) { return a.id < b.id; });
  return assemble(map_id, std::move(drafts), w);
}

/// Arc-length parameterized polyline; positions beyond either end extrapolate
/// along the end segments.
class PathSampler {
 public:
  explicit PathSampler(Points2d pts) : pts_(std::move(pts)) {
    cum_.push_back(0.0);
    for (Eigen::Index i = 1; i < pts_.cols(); ++i) {
      cum_.push_back(cum_.back() + (pts_.col(i) - pts_.col(i - 1)).norm());
    }
  }

  double length() const { return cum_.back(); }

  Point2d at(double s) const {
    const Eigen::Index n = pts_.cols();
    Eigen::Index seg = 0;
    if (s >= cum_.back()) {
      seg = n - 2;
    } else if (s > 0.0) {
      seg = static_cast<Eigen::Index>(std::upper_bound(cum_.begin(), cum_.end(), s) - cum_.begin()) - 1;
    }
    const double len = cum_[seg + 1] - cum_[seg];
    const Point2d a = pts_.col(seg), b = pts_.col(seg + 1);
    return a + (b - a) * ((s - cum_[seg]) / len);
  }

 private:
  Points2d pts_;
  std::vector<double> cum_;
};

/// Concatenates lane centerlines. With `first_point`, the path starts there
/// and skips first-lane vertices at or before arc offset `start`.
Points2d route_points(const RoadMap& map, const std::vector<int>& route, double start = 0.0,
                      std::optional<Point2d> first_point = std::nullopt) {
  std::vector<Point2d> pts;
  if (first_point) pts.push_back(*first_point);
  for (std::size_t r = 0; r < route.size(); ++r) {
    const Points2d& c = map.lanes()[static_cast<std::size_t>(route[r])].centerline.points();
    double cum = 0.0;
    for (Eigen::Index i = 0; i < c.cols(); ++i) {
      if (i > 0) cum += (c.col(i) - c.col(i - 1)).norm();
      if (r == 0 && first_point && cum <= start) continue;
      const Point2d p = c.col(i);
      if (!pts.empty() && (pts.back() - p).norm() < 1e-9) continue;
      pts.push_back(p);
    }
  }
  return make_points(pts);
}

int lane_index(const RoadMap& map, const std::string& id) {
  const LaneSegment* l = map.find_lane(id);
  return static_cast<int>(l - map.lanes().data());
}

/// Successor chains from `lane` until `need` metres are covered or the
/// chain ends.
void enumerate_routes(const RoadMap& map, std::vector<int>& prefix, double covered, double need,
                      std::vector<std::vector<int>>& out) {
  const LaneSegment& lane = map.lanes()[static_cast<std::size_t>(prefix.back())];
  if (covered >= need || lane.successors.empty() || prefix.size() >= 8) {
    out.push_back(prefix);
    return;
  }
  for (const auto& s : lane.successors) {
    const int idx = lane_index(map, s);
    prefix.push_back(idx);
    enumerate_routes(map, prefix, covered + arc_length(map.lanes()[static_cast<std::size_t>(idx)].centerline),
                     need, out);
    prefix.pop_back();
  }
}

std::vector<PathSampler> lane_paths(const RoadMap& map, int lane, const Point2d& p, double need) {
  const LaneSegment& l = map.lanes()[static_cast<std::size_t>(lane)];
  const auto proj = nearest_on_polyline<double>(p, l.centerline);
  std::vector<std::vector<int>> routes;
  std::vector<int> prefix{lane};
  enumerate_routes(map, prefix, arc_length(l.centerline) - proj.arc_offset, need, routes);
  std::vector<PathSampler> out;
  for (const auto& r : routes) {
    Points2d pts = route_points(map, r, proj.arc_offset, proj.foot);
    if (pts.cols() < 2) {
      pts.conservativeResize(2, 2);
      pts.col(1) = pts.col(0) + proj.tangent;
    }
    out.emplace_back(std::move(pts));
  }
  return out;
}

PredictionSet const_vel(const ScenarioRecord& rec, int k) {
  const Eigen::Index L = rec.past.size();
  const Point2d last = rec.past.point(L - 1);
  const Point2d vel = last - rec.past.point(L - 2);
  const Eigen::Index T = rec.future.size();
  Points2d pts(2, T);
  for (Eigen::Index t = 0; t < T; ++t) pts.col(t) = last + static_cast<double>(t + 1) * vel;
  PredictionSet out;
  out.scenario_id = rec.id;
  out.anchor = last;
  out.modes.assign(static_cast<std::size_t>(k), Trajectory(pts, rec.dt));
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::kStraight: return "straight";
    case MapKind::kTIntersection: return "t_intersection";
    case MapKind::kCrossroads: return "crossroads";
  }
  return "straight";
}

MapKind map_kind_from_string(std::string_view s) {
  const std::string v = lower(s);
  if (v == "straight") return MapKind::kStraight;
  if (v == "t_intersection" || v == "t-intersection" || v == "t") return MapKind::kTIntersection;
  if (v == "crossroads") return MapKind::kCrossroads;
  throw Error(ErrorKind::kInvalidArgument, "unknown map kind '" + std::string(s) + "'");
}

const char* to_string(ToyPredictor kind) {
  switch (kind) {
    case ToyPredictor::kConstVel: return "const_vel";
    case ToyPredictor::kLaneFan: return "lane_fan";
    case ToyPredictor::kNoisy: return "noisy";
  }
  return "const_vel";
}

ToyPredictor toy_predictor_from_string(std::string_view s) {
  const std::string v = lower(s);
  if (v == "const_vel") return ToyPredictor::kConstVel;
  if (v == "lane_fan") return ToyPredictor::kLaneFan;
  if (v == "noisy") return ToyPredictor::kNoisy;
  throw Error(ErrorKind::kInvalidArgument, "unknown toy predictor '" + std::string(s) + "'");
}

void SynthSpec::validate() const {
  if (lanes_per_direction < 1 || n_scenarios < 1 || past_steps < 2 || future_steps < 2) {
    throw Error(ErrorKind::kInvalidArgument, "synth: counts must be >= 1 (steps >= 2)");
  }
  if (!(lane_width > 0.0) || !(dt > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "synth: lane_width and dt must be positive");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream));
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

double SeededRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RoadMap gen_map(const SynthSpec& spec) {
  spec.validate();
  const std::string map_id = std::string("synth-") + to_string(spec.kind);
  switch (spec.kind) {
    case MapKind::kStraight:
      return straight_map(spec, map_id);
    case MapKind::kTIntersection:
      return junction_map(spec, map_id, {{"E", {1, 0}}, {"S", {0, -1}}, {"W", {-1, 0}}});
    case MapKind::kCrossroads:
      return junction_map(spec, map_id,
                          {{"E", {1, 0}}, {"N", {0, 1}}, {"S", {0, -1}}, {"W", {-1, 0}}});
  }
  throw Error(ErrorKind::kInvariant, "unhandled map kind");
}

std::vector<ScenarioRecord> gen_scenarios(const RoadMap& map, const SynthSpec& spec) {
  spec.validate();
  std::vector<int> starts;
  for (std::size_t i = 0; i < map.lanes().size(); ++i) {
    const auto& l = map.lanes()[i];
    if (!l.is_intersection && !l.successors.empty()) starts.push_back(static_cast<int>(i));
  }
  if (starts.empty()) {
    for (std::size_t i = 0; i < map.lanes().size(); ++i) starts.push_back(static_cast<int>(i));
  }
  const int total_steps = spec.past_steps + spec.future_steps;
  std::vector<ScenarioRecord> out;
  for (int n = 0; n < spec.n_scenarios; ++n) {
    SeededRng rng(derive_seed(spec.seed, static_cast<std::uint64_t>(n)));
    std::vector<int> route{starts[rng.index(starts.size())]};
    while (route.size() < 4) {
      const auto& succ = map.lanes()[static_cast<std::size_t>(route.back())].successors;
      if (succ.empty()) break;
      route.push_back(lane_index(map, succ[rng.index(succ.size())]));
    }
    const PathSampler path(route_points(map, route));
    const double speed = rng.uniform(kMinSpeed, kMaxSpeed);
    const double travel = speed * spec.dt * (total_steps - 1);
    if (travel > path.length()) {
      throw Error(ErrorKind::kInvariant, "synth route shorter than the trajectory");
    }
    const double s0 = rng.uniform(0.0, path.length() - travel);
    Points2d pts(2, total_steps);
    for (int t = 0; t < total_steps; ++t) pts.col(t) = path.at(s0 + speed * spec.dt * t);

    char id[32];
    std::snprintf(id, sizeof id, "%04d", n);
    out.push_back(ScenarioRecord{map.map_id() + "-" + id, map.map_id(),
                                 "agent-" + std::to_string(n), spec.dt,
                                 Trajectory(pts.leftCols(spec.past_steps), spec.dt),
                                 Trajectory(pts.rightCols(spec.future_steps), spec.dt)});
  }
  return out;
}

PredictionSet toy_predict(ToyPredictor kind, const ScenarioRecord& rec, const RoadMap& map, int k,
                          std::uint64_t seed, double noise_sigma) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "toy predictors need K >= 2");
  PredictionSet base = const_vel(rec, k);
  if (kind == ToyPredictor::kConstVel) return base;

  if (kind == ToyPredictor::kNoisy) {
    SeededRng rng(derive_seed(seed, fnv1a64(rec.id)));
    for (auto& m : base.modes) {
      Points2d pts = m.points();
      for (Eigen::Index t = 0; t < pts.cols(); ++t) {
        pts(0, t) += noise_sigma * rng.normal();
        pts(1, t) += noise_sigma * rng.normal();
      }
      m = Trajectory(std::move(pts), rec.dt);
    }
    return base;
  }

  // Lane fan: follow every reachable lane sequence from the current lane plus
  // lane changes into same-direction neighbours, at a spread of speeds.
  const Point2d p0 = rec.last_observed();
  const Point2d vel = p0 - rec.past.point(rec.past.size() - 2);
  const double step = vel.norm();
  if (step < kHeadingEps) return base;
  const Point2d dir = vel / step;

  int current = -1;
  double best_cos = 0.0;
  std::vector<int> candidates = map.lane_indices_containing(p0);
  if (candidates.empty()) candidates = map.lane_indices_within_radius(p0, 5.0);
  for (int idx : candidates) {
    const double c = nearest_on_polyline<double>(p0, map.lanes()[static_cast<std::size_t>(idx)].centerline)
                         .tangent.dot(dir);
    if (c > best_cos) {
      best_cos = c;
      current = idx;
    }
  }
  if (current < 0) return base;

  const Eigen::Index T = rec.future.size();
  const double need = step * static_cast<double>(T) * 1.5 + 5.0;
  struct Fan {
    const PathSampler* main;
    const PathSampler* target;
  };
  const std::vector<PathSampler> own = lane_paths(map, current, p0, need);
  std::vector<PathSampler> neighbours;
  const LaneSegment& lane = map.lanes()[static_cast<std::size_t>(current)];
  for (const auto* nb : {&lane.left_neighbor, &lane.right_neighbor}) {
    if (!nb->has_value()) continue;
    for (auto& p : lane_paths(map, lane_index(map, **nb), p0, need)) neighbours.push_back(std::move(p));
  }
  std::vector<Fan> fans;
  for (const auto& p : own) fans.push_back({&p, nullptr});
  for (const auto& p : neighbours) fans.push_back({&own.front(), &p});

  const std::size_t n_fans = fans.size();
  const std::size_t n_factors = std::size(kFanSpeedFactors);
  for (int m = 0; m < k; ++m) {
    const Fan& fan = fans[static_cast<std::size_t>(m) % n_fans];
    const double factor = kFanSpeedFactors[(static_cast<std::size_t>(m) / n_fans) % n_factors];
    Points2d pts(2, T);
    for (Eigen::Index t = 0; t < T; ++t) {
      const double s = factor * step * static_cast<double>(t + 1);
      Point2d p = fan.main->at(s);
      if (fan.target != nullptr) {
        const double x = static_cast<double>(t + 1) / static_cast<double>(T);
        const double lambda = x * x * (3.0 - 2.0 * x);
        p = (1.0 - lambda) * p + lambda * fan.target->at(s);
      }
      pts.col(t) = p;
    }
    base.modes[static_cast<std::size_t>(m)] = Trajectory(std::move(pts), rec.dt);
  }
  return base;
}

}  // namespace trajbench
