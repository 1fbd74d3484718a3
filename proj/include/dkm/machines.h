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

#ifndef DKM_MACHINES_H_
#define DKM_MACHINES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dkm/graph.h"
#include "dkm/kernel.h"

namespace dkm {

enum class Machine { kSimple, kSvm };

const char* MachineName(Machine machine);
std::optional<Machine> ParseMachine(std::string_view name);

// One real score per missing-label node; higher means more class-1.
struct DecisionScores {
  std::vector<int> nodes;  // ascending indices of V_miss
  std::vector<double> values;
  Machine machine = Machine::kSimple;
  int level = 0;
  double beta = 0.0;
  std::optional<double> cost;  // SVM only
  bool solver_hit_limit = false;

  int size() const { return static_cast<int>(nodes.size()); }
};

// f(v) = mean_{y_i = 1} K(v, v_i) - mean_{y_i = 2} K(v, v_i) for every
// missing-label node v.
DecisionScores SimpleKmScores(const KernelMatrix& kernel, const LabelSet& labels);

// c = (1/2n1^2) sum_{y=1} K(i,j) - (1/2n2^2) sum_{y=2} K(i,j). With this
// threshold, "score > c" is the nearest-centroid rule in feature space.
double CentroidThreshold(const KernelMatrix& kernel, const LabelSet& labels);

// Class 1 when score > c, otherwise class 2 (ties go to class 2).
std::vector<Label> ClassifyThreshold(const DecisionScores& scores, double threshold);

struct SvmOptions {
  double tolerance = 1e-3;
  std::int64_t max_updates = 1'000'000;
  // Working pairs with curvature below this are reported as a non-PSD kernel.
  double negative_curvature_limit = -1e-8;
  // Record the dual objective before the first and after every pair update.
  bool record_objective = false;
};

// C-SVM dual solution over the observed nodes. Class 1 maps to y = +1.
struct SvmModel {
  std::vector<double> alphas;
  std::vector<int> signs;  // y_i in {+1, -1}
  double bias = 0.0;
  double cost = 0.0;
  std::vector<int> support_indices;  // alpha_i > 0

  std::int64_t updates = 0;
  bool hit_update_limit = false;
  double max_kkt_violation = 0.0;
  std::vector<double> objective_trace;
};

// Solves max sum(a) - 1/2 sum_ij a_i a_j y_i y_j K(i,j) subject to
// 0 <= a_i <= cost and sum_i a_i y_i = 0 by pairwise working-set ascent with
// second-order pair selection. Stops once the maximal violating pair gap is
// below options.tolerance or after options.max_updates pair updates.
// The bias is averaged over unbounded support vectors, or taken as the
// midpoint of the feasible interval when there are none.
SvmModel SvmTrain(const Matrix& observed_kernel, std::span<const Label> labels,
                  double cost, const SvmOptions& options = {});

// f(v) = sum_i a_i y_i K(v, v_i) + bias for each row of `cross_kernel`
// (rows: scored points, columns: the training points in model order).
Vector SvmDecision(const SvmModel& model, const Matrix& cross_kernel);

// Trains on the observed block of `kernel` and scores the missing nodes.
DecisionScores SvmScores(const SvmModel& model, const KernelMatrix& kernel,
                         const LabelSet& labels);

// Deepens `base` by `level` steps and applies the chosen machine. The simple
// machine yields one score set; the SVM yields one per entry of `cost_grid`,
// in grid order.
std::vector<DecisionScores> DkmRun(const KernelMatrix& base, const LabelSet& labels,
                                   int level, Machine machine,
                                   std::span<const double> cost_grid = {},
                                   BandwidthDomain domain = BandwidthDomain::kAllNodes);

// Extracts K(rows, cols).
Matrix KernelBlock(const KernelMatrix& kernel, std::span<const int> rows,
                   std::span<const int> cols);

}  // namespace dkm

#endif  // DKM_MACHINES_H_
