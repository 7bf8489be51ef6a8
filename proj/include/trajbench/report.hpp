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

// Text renderings of metric reports: long-format CSV, Markdown tables and the
// diversity/admissibility balance chart.

#pragma once

#include <string>
#include <vector>

#include "trajbench/bench.hpp"

namespace trajbench {

/// Columns: model,category,metric,value,count,rank. Category "overall" holds
/// the difficulty-weighted values (count left blank).
std::string render_csv(const std::vector<MetricReport>& reports);

/// Overall table, ATT ablation table, then one block per structure x length
/// with rows grouped by difficulty. Rank 1 is bold, rank 2 italic.
std::string render_markdown(const std::vector<MetricReport>& reports);

std::string render_balance_csv(const std::vector<BalancePoint>& points, DiversityMetric diversity);

/// Self-contained SVG scatter: x = diversity, y = ATT, radius grows with
/// minFDE.
std::string render_balance_svg(const std::vector<BalancePoint>& points, DiversityMetric diversity,
                               const std::string& subset_label);

}  // namespace trajbench
