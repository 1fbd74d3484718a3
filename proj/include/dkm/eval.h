/*
 * Copyright 2026 The DKM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DKM_EVAL_H_
#define DKM_EVAL_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dkm/graph.h"
#include "dkm/kernel.h"
#include "dkm/machines.h"

namespace dkm {

enum class Metric { kAp, kAuc };

const char* MetricName(Metric metric);
// Accepts "AP"/"AUC" in any case.
std::optional<Metric> ParseMetric(std::string_view name);

// Non-interpolated average precision: sort by score descending (ties broken
// by position, earlier first) and average precision@k over the ranks k of
// the positives. Requires at least one positive.
double AveragePrecision(std::span<const double> scores, const std::vector<bool>& truth);

// Rank-sum AUC with midranks for tied scores. Requires both classes.
double Auc(std::span<const double> scores, const std::vector<bool>& truth);

double EvaluateMetric(Metric metric, std::span<const double> scores,
                      const std::vector<bool>& truth);

// Observed/missing partition of the labeled nodes, stratified by class.
struct Split {
  std::uint64_t seed = 0;
  double obs_fraction = 0.0;
  std::vector<int> observed;  // ascending
  std::vector<int> missing;   // ascending; includes unlabeled nodes
};

// Per class, the class's node indices (ascending) are shuffled with
// Rng(seed) (class 1 first, then class 2, sharing one generator) and the
// first round(obs_fraction * size) are observed, clamped to [1, size - 1].
Split StratifiedSplit(const LabelSet& labels, double obs_fraction, std::uint64_t seed);

// `labels` with every node outside split.observed set to unknown.
LabelSet TrainingLabels(const LabelSet& labels, const Split& split);

// Default SVM cost grid, searched with oracle (best test metric) selection.
inline constexpr std::array<double, 13> kDefaultCostGrid = {
    1e-5, 1e-4, 1e-3, 1e-2, 0.05, 0.1, 0.5, 1, 2, 5, 10, 50, 100};

struct SweepConfig {
  std::vector<double> betas;
  std::vector<int> levels;
  std::vector<Machine> machines;
  std::vector<double> cost_grid{kDefaultCostGrid.begin(), kDefaultCostGrid.end()};
  int n_splits = 25;
  double obs_fraction = 0.5;
  Metric metric = Metric::kAuc;
  std::uint64_t master_seed = 0;
  BandwidthDomain bandwidth_domain = BandwidthDomain::kAllNodes;
  int threads = 1;
};

// Throws a config error describing the first invalid field.
void ValidateSweepConfig(const SweepConfig& config);

struct SweepRow {
  double beta = 0.0;
  int level = 0;
  Machine machine = Machine::kSimple;
  // SVM rows: the cost whose test metric was best on this split (oracle
  // selection over the cost grid).
  std::optional<double> cost;
  int split_id = 0;
  Metric metric = Metric::kAuc;
  double value = 0.0;
};

struct SweepAggregate {
  double beta = 0.0;
  int level = 0;
  Machine machine = Machine::kSimple;
  Metric metric = Metric::kAuc;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n); 0 for n = 1
  int n_splits = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepAggregate> aggregates;
  // Degenerate cells, solver iteration-cap hits. Deterministic order.
  std::vector<std::string> diagnostics;
};

// For each beta the diffusion kernel is built once and deepened once per
// level; split s uses seed master_seed + s, so every cell sees the same
// splits. Cells whose kernel degenerates are dropped and reported in
// `diagnostics`. Rows are ordered by (beta, level, machine) in config order,
// then split id, independent of config.threads.
SweepResult RunSweep(const Graph& graph, const LabelSet& labels, const SweepConfig& config);

// CSV writers, 12 significant digits.
void WriteSweepRows(std::ostream& out, const SweepResult& result);
void WriteSweepAggregates(std::ostream& out, const SweepResult& result);

}  // namespace dkm

#endif  // DKM_EVAL_H_
