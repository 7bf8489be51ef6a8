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

#include "trajbench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>

namespace trajbench {
namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::optional<double> category_value(const MetricReport& r, const std::string& category,
                                     const std::string& name) {
  const auto cat = r.per_category.find(category);
  if (cat == r.per_category.end() || cat->second.empty()) return std::nullopt;
  const auto it = cat->second.metrics.find(name);
  if (it == cat->second.metrics.end() || it->second.count == 0) return std::nullopt;
  return it->second.mean();
}

std::optional<double> overall_value(const MetricReport& r, const std::string& name) {
  const auto it = r.overall.find(name);
  if (it == r.overall.end()) return std::nullopt;
  return it->second;
}

std::string annotate(const std::optional<double>& v, const std::optional<int>& rank) {
  if (!v) return "n/a";
  const std::string num = fmt("%.4f", *v);
  const std::string suffix = " (" + std::to_string(*rank) + ")";
  if (*rank == 1) return "**" + num + "**" + suffix;
  if (*rank == 2) return "*" + num + "*" + suffix;
  return num + suffix;
}

std::string header_row(const std::vector<std::string>& lead) {
  std::string head = "|", rule = "|";
  for (const auto& c : lead) {
    head += " " + c + " |";
    rule += " --- |";
  }
  for (const auto& m : metric_names()) {
    head += " " + m + " |";
    rule += " ---: |";
  }
  return head + "\n" + rule + "\n";
}

/// One row per report; ranks computed among the rows.
template <typename ValueFn>
std::string table_rows(const std::vector<MetricReport>& reports, const std::string& lead,
                       ValueFn value) {
  std::vector<std::vector<std::optional<int>>> ranks;
  for (const auto& m : metric_names()) {
    std::vector<std::optional<double>> vals;
    for (const auto& r : reports) vals.push_back(value(r, m));
    ranks.push_back(competition_rank(vals, lower_is_better(m)));
  }
  std::string out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out += "| " + lead + reports[i].model + " |";
    for (std::size_t k = 0; k < metric_names().size(); ++k) {
      out += " " + annotate(value(reports[i], metric_names()[k]), ranks[k][i]) + " |";
    }
    out += "\n";
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

const char* diversity_name(DiversityMetric d) { return d == DiversityMetric::kAae ? "AAE" : "AMV"; }

}  // namespace

std::string render_csv(const std::vector<MetricReport>& reports) {
  std::string out = "model,category,metric,value,count,rank\n";
  for (const auto& m : metric_names()) {
    std::vector<std::optional<double>> vals;
    for (const auto& r : reports) vals.push_back(overall_value(r, m));
    const auto ranks = competition_rank(vals, lower_is_better(m));
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (!vals[i]) continue;
      out += csv_field(reports[i].model) + ",overall," + m + "," + fmt("%.17g", *vals[i]) + ",," +
             std::to_string(*ranks[i]) + "\n";
    }
  }
  for (const auto& cat : all_categories()) {
    const std::string key = cat.key();
    for (const auto& m : metric_names()) {
      std::vector<std::optional<double>> vals;
      for (const auto& r : reports) vals.push_back(category_value(r, key, m));
      const auto ranks = competition_rank(vals, lower_is_better(m));
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (!vals[i]) continue;
        const auto count = reports[i].per_category.at(key).metrics.at(m).count;
        out += csv_field(reports[i].model) + "," + key + "," + m + "," + fmt("%.17g", *vals[i]) +
               "," + std::to_string(count) + "," + std::to_string(*ranks[i]) + "\n";
      }
    }
  }
  return out;
}

std::string render_markdown(const std::vector<MetricReport>& reports) {
  std::ostringstream md;
  md << "# Benchmark report\n\n";
  md << "Models: " << reports.size() << ". Rank in parentheses; rank 1 bold, rank 2 italic.\n\n";

  md << "## Overall (difficulty-weighted)\n\n";
  md << header_row({"Model"});
  md << table_rows(reports, "", [](const MetricReport& r, const std::string& m) {
    return overall_value(r, m);
  });

  md << "\n## ATT ablation (all modes)\n\n";
  md << "| Model | Boundary | Alignment | Kinematic | ATT | Modes |\n";
  md << "| --- | ---: | ---: | ---: | ---: | ---: |\n";
  for (const auto& r : reports) {
    const auto& a = r.att_ablation;
    md << "| " << r.model << " | " << fmt("%.4f", a.boundary) << " | " << fmt("%.4f", a.alignment)
       << " | " << fmt("%.4f", a.kinematic) << " | " << fmt("%.4f", a.att) << " | " << a.modes
       << " |\n";
  }

  for (RoadStructure s : {RoadStructure::kTurn, RoadStructure::kCruising}) {
    for (LengthClass l : {LengthClass::kShort, LengthClass::kLong}) {
      md << "\n## " << to_string(s) << " / " << to_string(l) << "\n\n";
      md << header_row({"Difficulty", "Model"});
      for (Difficulty d : {Difficulty::kHard, Difficulty::kMiddle, Difficulty::kEasy}) {
        const std::string key = ScenarioTag{s, d, l}.key();
        std::size_t n = 0;
        for (const auto& r : reports) n = std::max(n, r.per_category.at(key).scenarios);
        if (n == 0) {
          md << "| " << to_string(d) << " | (empty) |";
          for (std::size_t k = 0; k < metric_names().size(); ++k) md << " n/a |";
          md << "\n";
          continue;
        }
        md << table_rows(reports, std::string(to_string(d)) + " | ",
                         [&](const MetricReport& r, const std::string& m) {
                           return category_value(r, key, m);
                         });
      }
    }
  }
  return md.str();
}

std::string render_balance_csv(const std::vector<BalancePoint>& points, DiversityMetric diversity) {
  std::string out = std::string("model,") + diversity_name(diversity) + ",ATT,minFDE\n";
  for (const auto& p : points) {
    out += csv_field(p.model) + "," + fmt("%.17g", p.diversity) + "," + fmt("%.17g", p.att) + "," +
           fmt("%.17g", p.min_fde) + "\n";
  }
  return out;
}

std::string render_balance_svg(const std::vector<BalancePoint>& points, DiversityMetric diversity,
                               const std::string& subset_label) {
  constexpr double kW = 640, kH = 480, kLeft = 70, kRight = 30, kTop = 40, kBottom = 60;
  constexpr double kMinR = 4, kMaxR = 30;
  double x_max = 0.0, f_max = 0.0;
  for (const auto& p : points) {
    x_max = std::max(x_max, p.diversity);
    f_max = std::max(f_max, p.min_fde);
  }
  if (x_max <= 0.0) x_max = 1.0;
  const double plot_w = kW - kLeft - kRight, plot_h = kH - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + plot_w * x / (1.1 * x_max); };
  const auto py = [&](double y) { return kTop + plot_h * (1.0 - y); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << diversity_name(diversity) << " vs ATT (" << xml_escape(subset_label)
      << "), circle size ~ minFDE</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kW - kRight << "\" y2=\""
      << py(0) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\"" << kLeft << "\" y2=\"" << py(1)
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = i / 4.0;
    const double x = 1.1 * x_max * i / 4.0;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt("%.2f", py(y) + 4)
        << "\" text-anchor=\"end\">" << fmt("%.2f", y) << "</text>\n";
    svg << "<text x=\"" << fmt("%.2f", px(x)) << "\" y=\"" << py(0) + 18
        << "\" text-anchor=\"middle\">" << fmt("%.3g", x) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\">"
      << diversity_name(diversity) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">ATT</text>\n";
  for (const auto& p : points) {
    const double r = f_max > 0.0 ? kMinR + (kMaxR - kMinR) * p.min_fde / f_max : kMinR;
    svg << "<circle cx=\"" << fmt("%.2f", px(p.diversity)) << "\" cy=\"" << fmt("%.2f", py(p.att))
        << "\" r=\"" << fmt("%.2f", r) << "\" fill=\"steelblue\" fill-opacity=\"0.5\" stroke=\"navy\"/>\n";
    svg << "<text x=\"" << fmt("%.2f", px(p.diversity)) << "\" y=\""
        << fmt("%.2f", py(p.att) - r - 4) << "\" text-anchor=\"middle\">" << xml_escape(p.model)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace trajbench
