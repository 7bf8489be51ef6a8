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

#include "trajbench/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <set>

#include "trajbench/bench.hpp"
#include "trajbench/io.hpp"
#include "trajbench/metrics.hpp"
#include "trajbench/report.hpp"
#include "trajbench/scenario.hpp"
#include "trajbench/synth.hpp"

namespace trajbench {
namespace {

namespace fs = std::filesystem;
using io::Json;

/// Input file contents keyed for digests by file name only, so outputs do
/// not depend on where the inputs live.
struct Inputs {
  Json digests = Json::array();

  Json read(const std::string& role, const fs::path& path) {
    const std::string text = io::read_text(path);
    digests.push_back({{"role", role}, {"file", path.filename().string()}, {"sha256", io::sha256_hex(text)}});
    return io::parse_json(text, path.string());
  }
};

RunConfig load_config(Inputs& in, const std::string& path) {
  if (path.empty()) return RunConfig{};
  return io::config_from_json(in.read("config", path));
}

MapSet load_maps(Inputs& in, const std::string& path, std::ostream& err) {
  MapSet maps = io::maps_from_json(in.read("maps", path));
  for (const auto& [id, m] : maps) {
    for (const auto& w : m.warnings()) err << "warning: map " << id << ": " << w << "\n";
  }
  return maps;
}

struct SynthArgs {
  std::string kind = "straight";
  int n = 20;
  std::uint64_t seed = 0;
  int k = 6;
  int lanes = 2;
  double noise_sigma = 1.0;
  std::string out;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  SynthSpec spec;
  spec.kind = map_kind_from_string(a.kind);
  spec.n_scenarios = a.n;
  spec.seed = a.seed;
  spec.lanes_per_direction = a.lanes;
  spec.validate();
  if (a.k < 2) throw Error(ErrorKind::kInvalidArgument, "--k must be at least 2");

  const Json meta = {{"kind", to_string(spec.kind)},
                     {"seed", spec.seed},
                     {"n_scenarios", spec.n_scenarios},
                     {"lanes_per_direction", spec.lanes_per_direction},
                     {"lane_width", spec.lane_width},
                     {"dt", spec.dt},
                     {"past_steps", spec.past_steps},
                     {"future_steps", spec.future_steps},
                     {"rng", "mt19937_64; uniform = (draw >> 11) * 2^-53; normal = Box-Muller"},
                     {"seed_mixing", "derive_seed(base, stream) = splitmix64(base ^ splitmix64(stream))"}};

  const RoadMap map = gen_map(spec);
  const auto records = gen_scenarios(map, spec);
  const fs::path dir(a.out);

  Json map_json = io::map_to_json(map);
  map_json["synth"] = meta;
  io::write_atomic(dir / "map.json", io::dump(map_json));

  Json scen_json = io::scenarios_to_json(records);
  scen_json["synth"] = meta;
  io::write_atomic(dir / "scenarios.json", io::dump(scen_json));

  for (ToyPredictor kind : {ToyPredictor::kConstVel, ToyPredictor::kLaneFan, ToyPredictor::kNoisy}) {
    io::PredictionsFile file;
    file.model = to_string(kind);
    file.dt = spec.dt;
    for (const auto& r : records) {
      file.predictions.push_back(toy_predict(kind, r, map, a.k, spec.seed, a.noise_sigma));
    }
    Json j = io::predictions_to_json(file);
    j["synth"] = meta;
    j["synth"]["predictor"] = to_string(kind);
    j["synth"]["k"] = a.k;
    j["synth"]["noise_sigma"] = a.noise_sigma;
    io::write_atomic(dir / ("predictions_" + std::string(to_string(kind)) + ".json"), io::dump(j));
  }
  out << "wrote " << records.size() << " scenarios and 3 prediction files to " << dir.string() << "\n";
  return kExitOk;
}

struct TagArgs {
  std::string scenarios, maps, minfde, config, out;
  std::vector<std::string> predictions;
};

int cmd_tag(const TagArgs& a, std::ostream& out, std::ostream& err) {
  if (a.minfde.empty() == a.predictions.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "give exactly one of --minfde or --predictions");
  }
  Inputs in;
  const RunConfig cfg = load_config(in, a.config);
  const auto records = io::scenarios_from_json(in.read("scenarios", a.scenarios));
  const MapSet maps = load_maps(in, a.maps, err);

  MinFdeTable table;
  if (!a.minfde.empty()) {
    table = io::minfde_from_json(in.read("minfde", a.minfde)).table;
  } else {
    std::map<std::string, const Trajectory*> gt;
    for (const auto& r : records) gt.emplace(r.id, &r.future);
    std::set<std::string> models;
    for (const auto& path : a.predictions) {
      const auto file = io::predictions_from_json(in.read("predictions", path));
      if (!models.insert(file.model).second) {
        throw Error(ErrorKind::kDataConsistency, "model '" + file.model + "' given twice");
      }
      io::validate_references(records, maps, file.predictions);
      std::set<std::string> seen;
      for (const auto& p : file.predictions) {
        table[p.scenario_id].push_back(min_fde(p, *gt.at(p.scenario_id)));
        seen.insert(p.scenario_id);
      }
      std::string missing;
      for (const auto& r : records) {
        if (!seen.contains(r.id)) missing += " " + r.id;
      }
      if (!missing.empty()) {
        throw Error(ErrorKind::kDataConsistency,
                    "model '" + file.model + "' has no prediction for:" + missing);
      }
    }
  }
  const TagSet tags = tag_all(records, maps, table, cfg.scenario);
  Json j = io::tags_to_json(tags, cfg);
  j["inputs"] = in.digests;
  io::write_atomic(a.out, io::dump(j));
  out << "tagged " << tags.tags.size() << " scenarios into " << a.out << "\n";
  return kExitOk;
}

struct EvalArgs {
  std::string scenarios, maps, predictions, tags, config, out;
  unsigned threads = 0;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  Inputs in;
  const RunConfig cfg = load_config(in, a.config);
  const auto records = io::scenarios_from_json(in.read("scenarios", a.scenarios));
  const MapSet maps = load_maps(in, a.maps, err);
  const auto preds = io::predictions_from_json(in.read("predictions", a.predictions));
  const TagSet tags = io::tags_from_json(in.read("tags", a.tags));
  io::validate_references(records, maps, preds.predictions);

  const unsigned threads = a.threads > 0 ? a.threads : default_thread_count();
  const EvaluationRun run =
      evaluate_model(preds.model, records, maps, preds.predictions, tags, cfg, threads);
  Json j = io::metrics_to_json(run);
  j["inputs"] = in.digests;
  io::write_atomic(a.out, io::dump(j));
  out << "evaluated " << run.per_scenario.size() << " scenarios for model " << run.model_name
      << " into " << a.out << "\n";
  return kExitOk;
}

struct ReportArgs {
  std::vector<std::string> metrics;
  std::string out;
  std::string balance = "aae";
  std::string category = "all";
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  DiversityMetric diversity;
  if (a.balance == "aae" || a.balance == "AAE") {
    diversity = DiversityMetric::kAae;
  } else if (a.balance == "amv" || a.balance == "AMV") {
    diversity = DiversityMetric::kAmv;
  } else {
    throw Error(ErrorKind::kInvalidArgument, "--balance must be aae or amv");
  }
  const CategoryFilter filter = CategoryFilter::parse(a.category);

  Inputs in;
  std::vector<MetricReport> reports;
  Json configs = Json::object();
  std::set<std::string> models;
  for (const auto& path : a.metrics) {
    const io::MetricsFile file = io::metrics_from_json(in.read("metrics", path));
    if (!models.insert(file.run.model_name).second) {
      throw Error(ErrorKind::kDataConsistency, "model '" + file.run.model_name + "' given twice");
    }
    reports.push_back(aggregate(file.run, file.tags, file.run.config_snapshot.weights));
    configs[file.run.model_name] = io::config_to_json(file.run.config_snapshot);
  }

  Json rep = {{"configs", configs}, {"inputs", in.digests}, {"reports", Json::array()}};
  Json ranks = Json::object();
  for (const auto& m : metric_names()) {
    std::vector<std::optional<double>> vals;
    for (const auto& r : reports) {
      const auto it = r.overall.find(m);
      vals.push_back(it == r.overall.end() ? std::nullopt : std::optional<double>(it->second));
    }
    const auto rk = competition_rank(vals, lower_is_better(m));
    Json per = Json::object();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      per[reports[i].model] = rk[i] ? Json(*rk[i]) : Json(nullptr);
    }
    ranks[m] = per;
  }
  for (const auto& r : reports) rep["reports"].push_back(io::report_to_json(r));
  rep["overall_ranks"] = ranks;

  const auto points = balance_data(reports, diversity, filter);
  Json bal = Json::array();
  for (const auto& p : points) {
    bal.push_back({{"model", p.model}, {"diversity", p.diversity}, {"att", p.att}, {"min_fde", p.min_fde}});
  }
  rep["balance"] = {{"diversity_metric", diversity == DiversityMetric::kAae ? "AAE" : "AMV"},
                    {"category", filter.key()},
                    {"points", bal}};

  std::string md = render_markdown(reports);
  md += "\n## Inputs\n\n| Role | File | SHA-256 |\n| --- | --- | --- |\n";
  for (const auto& d : in.digests) {
    md += "| " + d["role"].get<std::string>() + " | " + d["file"].get<std::string>() + " | " +
          d["sha256"].get<std::string>() + " |\n";
  }
  md += "\n## Configuration\n\n```json\n" + io::dump(configs) + "```\n";

  const fs::path dir(a.out);
  io::write_atomic(dir / "report.json", io::dump(rep));
  io::write_atomic(dir / "report.csv", render_csv(reports));
  io::write_atomic(dir / "report.md", md);
  io::write_atomic(dir / "balance.csv", render_balance_csv(points, diversity));
  io::write_atomic(dir / "balance.svg", render_balance_svg(points, diversity, filter.key()));
  out << "reported " << reports.size() << " models into " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return kExitUsage;
    case ErrorKind::kSchema:
    case ErrorKind::kInvalidMap: return kExitSchema;
    case ErrorKind::kDataConsistency:
    case ErrorKind::kShape:
    case ErrorKind::kInsufficientModes: return kExitDataConsistency;
    default: return kExitInternal;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trajectory prediction benchmark toolkit", "trajbench"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic map, scenarios and toy predictions");
  synth->add_option("--kind", sa.kind, "straight, t_intersection or crossroads")->capture_default_str();
  synth->add_option("--n", sa.n, "Number of scenarios")->capture_default_str();
  synth->add_option("--seed", sa.seed, "Base seed")->capture_default_str();
  synth->add_option("--k", sa.k, "Modes per toy prediction")->capture_default_str();
  synth->add_option("--lanes", sa.lanes, "Lanes per direction")->capture_default_str();
  synth->add_option("--noise-sigma", sa.noise_sigma, "NOISY jitter in meters")->capture_default_str();
  synth->add_option("--out", sa.out, "Output directory")->required();

  TagArgs ta;
  auto* tag = app.add_subcommand("tag", "Assign scenario categories");
  tag->add_option("--scenarios", ta.scenarios)->required();
  tag->add_option("--maps", ta.maps)->required();
  tag->add_option("--minfde", ta.minfde, "Per-model minFDE table");
  tag->add_option("--predictions", ta.predictions, "One prediction file per model");
  tag->add_option("--config", ta.config, "Run configuration (defaults when omitted)");
  tag->add_option("--out", ta.out)->required();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Score one model's predictions");
  eval->add_option("--scenarios", ea.scenarios)->required();
  eval->add_option("--maps", ea.maps)->required();
  eval->add_option("--predictions", ea.predictions)->required();
  eval->add_option("--tags", ea.tags)->required();
  eval->add_option("--config", ea.config, "Run configuration (defaults when omitted)");
  eval->add_option("--threads", ea.threads, "Worker threads (default: CRITERIA_THREADS or all cores)");
  eval->add_option("--out", ea.out)->required();

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Aggregate, rank and render metrics files");
  report->add_option("--metrics", ra.metrics)->required();
  report->add_option("--out", ra.out)->required();
  report->add_option("--balance", ra.balance, "aae or amv")->capture_default_str();
  report->add_option("--category", ra.category, "all, challenging or S/D/L with * wildcards")
      ->capture_default_str();

  std::vector<std::string> argv_store{"trajbench"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(sa, out);
    if (*tag) return cmd_tag(ta, out, err);
    if (*eval) return cmd_eval(ea, out, err);
    if (*report) return cmd_report(ra, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error (internal): " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace trajbench
