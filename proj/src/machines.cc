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

#include "dkm/machines.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dkm/error.h"
#include "text_format.h"

namespace dkm {
namespace {

constexpr double kTau = 1e-12;

double DualObjective(std::span<const double> alpha, std::span<const double> grad) {
  // With G = Q a - e: sum(a) - a'Qa/2 = -sum_i a_i (G_i - 1) / 2.
  double total = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) total += alpha[i] * (grad[i] - 1.0);
  return -0.5 * total;
}

}  // namespace

const char* MachineName(Machine machine) {
  return machine == Machine::kSimple ? "simple" : "svm";
}

std::optional<Machine> ParseMachine(std::string_view name) {
  if (name == "simple") return Machine::kSimple;
  if (name == "svm") return Machine::kSvm;
  return std::nullopt;
}

Matrix KernelBlock(const KernelMatrix& kernel, std::span<const int> rows,
                   std::span<const int> cols) {
  Matrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) out(a, b) = kernel(rows[a], cols[b]);
  }
  return out;
}

DecisionScores SimpleKmScores(const KernelMatrix& kernel, const LabelSet& labels) {
  if (labels.size() != kernel.size()) {
    ThrowDataError("label count does not match kernel size");
  }
  labels.RequireBothClasses();
  const double n1 = labels.count(Label::kClass1);
  const double n2 = labels.count(Label::kClass2);
  DecisionScores out;
  out.machine = Machine::kSimple;
  out.level = kernel.provenance().level;
  out.beta = kernel.provenance().beta;
  for (int v : labels.missing()) {
    double sum1 = 0.0;
    double sum2 = 0.0;
    for (int i : labels.observed()) {
      (labels[i] == Label::kClass1 ? sum1 : sum2) += kernel(v, i);
    }
    out.nodes.push_back(v);
    out.values.push_back(sum1 / n1 - sum2 / n2);
  }
  return out;
}

double CentroidThreshold(const KernelMatrix& kernel, const LabelSet& labels) {
  if (labels.size() != kernel.size()) {
    ThrowDataError("label count does not match kernel size");
  }
  labels.RequireBothClasses();
  const double n1 = labels.count(Label::kClass1);
  const double n2 = labels.count(Label::kClass2);
  double within1 = 0.0;
  double within2 = 0.0;
  for (int i : labels.observed()) {
    for (int j : labels.observed()) {
      if (labels[i] != labels[j]) continue;
      (labels[i] == Label::kClass1 ? within1 : within2) += kernel(i, j);
    }
  }
  return within1 / (2.0 * n1 * n1) - within2 / (2.0 * n2 * n2);
}

std::vector<Label> ClassifyThreshold(const DecisionScores& scores, double threshold) {
  std::vector<Label> out;
  out.reserve(scores.values.size());
  for (double f : scores.values) {
    out.push_back(f > threshold ? Label::kClass1 : Label::kClass2);
  }
  return out;
}

SvmModel SvmTrain(const Matrix& observed_kernel, std::span<const Label> labels,
                  double cost, const SvmOptions& options) {
  const auto n = static_cast<int>(labels.size());
  if (observed_kernel.rows() != n || observed_kernel.cols() != n) {
    ThrowDataError("SVM kernel block does not match the number of labels");
  }
  if (!std::isfinite(cost) || cost <= 0.0) ThrowConfigError("SVM cost must be positive");
  if (!observed_kernel.allFinite()) ThrowDataError("SVM kernel has non-finite entries");

  SvmModel model;
  model.cost = cost;
  model.signs.resize(n);
  int positives = 0;
  for (int i = 0; i < n; ++i) {
    if (labels[i] == Label::kUnknown) ThrowDataError("SVM training label is unknown");
    model.signs[i] = labels[i] == Label::kClass1 ? +1 : -1;
    positives += model.signs[i] > 0;
  }
  if (positives == 0 || positives == n) {
    ThrowDataError("SVM training needs observed nodes from both classes");
  }

  const Matrix& k = observed_kernel;
  const std::vector<int>& y = model.signs;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  const auto at_upper = [&](int t) { return alpha[t] >= cost; };
  const auto at_lower = [&](int t) { return alpha[t] <= 0.0; };
  if (options.record_objective) model.objective_trace.push_back(0.0);

  while (true) {
    // i maximizes -y_t G_t over I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    int i = -1;
    for (int t = 0; t < n; ++t) {
      if (y[t] == +1 ? !at_upper(t) : !at_lower(t)) {
        const double v = -y[t] * grad[t];
        if (v >= gmax) {
          gmax = v;
          i = t;
        }
      }
    }
    // j minimizes the second-order objective change over I_low.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    int j = -1;
    for (int t = 0; t < n; ++t) {
      if (y[t] == +1 ? at_lower(t) : at_upper(t)) continue;
      const double v = y[t] * grad[t];
      gmax2 = std::max(gmax2, v);
      if (i < 0) continue;
      const double grad_diff = gmax + v;
      if (grad_diff > 0.0) {
        const double curvature = k(i, i) + k(t, t) - 2.0 * k(i, t);
        const double quad = curvature > 0.0 ? curvature : kTau;
        const double obj_diff = -(grad_diff * grad_diff) / quad;
        if (obj_diff <= best) {
          best = obj_diff;
          j = t;
        }
      }
    }
    if (i < 0 || j < 0 || gmax + gmax2 < options.tolerance) break;
    if (model.updates >= options.max_updates) {
      model.hit_update_limit = true;
      break;
    }

    const double curvature = k(i, i) + k(j, j) - 2.0 * k(i, j);
    if (curvature < options.negative_curvature_limit) {
      ThrowDegenerate("SVM kernel is not positive semidefinite: working pair (" +
                      std::to_string(i) + ", " + std::to_string(j) + ") has curvature " +
                      text::FormatDouble(curvature, 6));
    }
    const double quad = curvature > 0.0 ? curvature : kTau;
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = cost - diff;
        }
      } else if (alpha[j] > cost) {
        alpha[j] = cost;
        alpha[i] = cost + diff;
      }
    } else {
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > cost) {
        if (alpha[i] > cost) {
          alpha[i] = cost;
          alpha[j] = sum - cost;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > cost) {
        if (alpha[j] > cost) {
          alpha[j] = cost;
          alpha[i] = sum - cost;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double d_i = alpha[i] - old_i;
    const double d_j = alpha[j] - old_j;
    for (int t = 0; t < n; ++t) {
      grad[t] += y[t] * (y[i] * k(t, i) * d_i + y[j] * k(t, j) * d_j);
    }
    ++model.updates;
    if (options.record_objective) {
      model.objective_trace.push_back(DualObjective(alpha, grad));
    }
  }

  // Bias from the free vectors, else the midpoint of the feasible interval.
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  int free_count = 0;
  for (int t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (at_upper(t)) {
      if (y[t] == -1) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else if (at_lower(t)) {
      if (y[t] == +1) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / free_count : 0.5 * (upper + lower);
  model.bias = -rho;
  model.alphas = std::move(alpha);

  for (int t = 0; t < n; ++t) {
    if (model.alphas[t] > 0.0) model.support_indices.push_back(t);
    // y_t f(x_t) = (Q a)_t + y_t b = G_t + 1 + y_t b.
    const double margin = grad[t] + 1.0 + y[t] * model.bias;
    double violation = 0.0;
    if (model.alphas[t] <= 0.0) {
      violation = std::max(0.0, 1.0 - margin);
    } else if (model.alphas[t] >= cost) {
      violation = std::max(0.0, margin - 1.0);
    } else {
      violation = std::abs(margin - 1.0);
    }
    model.max_kkt_violation = std::max(model.max_kkt_violation, violation);
  }
  return model;
}

Vector SvmDecision(const SvmModel& model, const Matrix& cross_kernel) {
  const auto m = static_cast<Eigen::Index>(model.alphas.size());
  if (cross_kernel.cols() != m) {
    ThrowDataError("cross kernel has " + std::to_string(cross_kernel.cols()) +
                   " columns but the model has " + std::to_string(m) + " training points");
  }
  Vector coef(m);
  for (Eigen::Index i = 0; i < m; ++i) coef[i] = model.alphas[i] * model.signs[i];
  Vector out = cross_kernel * coef;
  out.array() += model.bias;
  return out;
}

DecisionScores SvmScores(const SvmModel& model, const KernelMatrix& kernel,
                         const LabelSet& labels) {
  if (labels.size() != kernel.size()) {
    ThrowDataError("label count does not match kernel size");
  }
  const Vector f = SvmDecision(model, KernelBlock(kernel, labels.missing(), labels.observed()));
  DecisionScores out;
  out.machine = Machine::kSvm;
  out.level = kernel.provenance().level;
  out.beta = kernel.provenance().beta;
  out.cost = model.cost;
  out.solver_hit_limit = model.hit_update_limit;
  out.nodes = labels.missing();
  out.values.assign(f.data(), f.data() + f.size());
  return out;
}

std::vector<DecisionScores> DkmRun(const KernelMatrix& base, const LabelSet& labels,
                                   int level, Machine machine,
                                   std::span<const double> cost_grid,
                                   BandwidthDomain domain) {
  if (labels.size() != base.size()) {
    ThrowDataError("label count does not match kernel size");
  }
  labels.RequireBothClasses();
  if (machine == Machine::kSvm && cost_grid.empty()) {
    ThrowConfigError("the SVM needs a non-empty cost grid");
  }
  DeepenOptions options;
  options.domain = domain;
  options.observed = labels.observed();
  const KernelMatrix kernel = Deepen(base, level, options);
  if (machine == Machine::kSimple) return {SimpleKmScores(kernel, labels)};

  const Matrix observed = KernelBlock(kernel, labels.observed(), labels.observed());
  std::vector<Label> observed_labels;
  for (int i : labels.observed()) observed_labels.push_back(labels[i]);
  std::vector<DecisionScores> out;
  for (double cost : cost_grid) {
    const SvmModel model = SvmTrain(observed, observed_labels, cost);
    out.push_back(SvmScores(model, kernel, labels));
  }
  return out;
}

}  // namespace dkm
