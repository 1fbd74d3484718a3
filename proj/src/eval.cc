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

#include "dkm/eval.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include "dkm/error.h"
#include "dkm/rng.h"
#include "text_format.h"

namespace dkm {
namespace {

void CheckSizes(std::span<const double> scores, const std::vector<bool>& truth) {
  if (scores.size() != truth.size()) {
    ThrowDataError("score and truth vectors differ in length");
  }
}

// Runs fn(0..count-1) on up to `threads` workers. The first exception is
// rethrown after all workers finish.
void ParallelFor(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

std::string CellName(double beta, int level, std::optional<Machine> machine) {
  std::string out = "beta=" + text::FormatDouble(beta, 12) +
                    " level=" + std::to_string(level);
  if (machine) out += std::string(" machine=") + MachineName(*machine);
  return out;
}

}  // namespace

const char* MetricName(Metric metric) { return metric == Metric::kAp ? "AP" : "AUC"; }

std::optional<Metric> ParseMetric(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "AP") return Metric::kAp;
  if (upper == "AUC") return Metric::kAuc;
  return std::nullopt;
}

double AveragePrecision(std::span<const double> scores, const std::vector<bool>& truth) {
  CheckSizes(scores, truth);
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  double total = 0.0;
  int hits = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (!truth[order[rank]]) continue;
    ++hits;
    total += static_cast<double>(hits) / static_cast<double>(rank + 1);
  }
  if (hits == 0) ThrowDataError("average precision needs at least one positive");
  return total / hits;
}

double Auc(std::span<const double> scores, const std::vector<bool>& truth) {
  CheckSizes(scores, truth);
  const auto n = scores.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores[a] < scores[b]; });
  // Rank sums of positives are accumulated doubled (2 * midrank is an
  // integer), keeping the sum exact.
  double doubled_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    const double doubled_midrank = static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) {
      if (truth[order[k]]) {
        doubled_rank_sum += doubled_midrank;
        ++positives;
      }
    }
    start = end;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    ThrowDataError("AUC needs both positive and negative nodes");
  }
  const double p = static_cast<double>(positives);
  return (doubled_rank_sum - p * (p + 1.0)) /
         (2.0 * p * static_cast<double>(negatives));
}

double EvaluateMetric(Metric metric, std::span<const double> scores,
                      const std::vector<bool>& truth) {
  return metric == Metric::kAp ? AveragePrecision(scores, truth) : Auc(scores, truth);
}

Split StratifiedSplit(const LabelSet& labels, double obs_fraction, std::uint64_t seed) {
  if (!(obs_fraction > 0.0 && obs_fraction < 1.0)) {
    ThrowConfigError("obs_fraction must lie in (0, 1)");
  }
  Split split;
  split.seed = seed;
  split.obs_fraction = obs_fraction;
  Rng rng(seed);
  std::vector<bool> observed(labels.size(), false);
  for (Label cls : {Label::kClass1, Label::kClass2}) {
    std::vector<int> members;
    for (int i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    const int size = static_cast<int>(members.size());
    if (size < 2) {
      ThrowDataError(std::string("class ") + (cls == Label::kClass1 ? "1" : "2") +
                     " has " + std::to_string(size) +
                     " labeled nodes; a split needs at least 2");
    }
    rng.Shuffle(members);
    int take = static_cast<int>(std::lround(obs_fraction * size));
    take = std::clamp(take, 1, size - 1);
    for (int k = 0; k < take; ++k) observed[members[k]] = true;
  }
  for (int i = 0; i < labels.size(); ++i) {
    (observed[i] ? split.observed : split.missing).push_back(i);
  }
  return split;
}

LabelSet TrainingLabels(const LabelSet& labels, const Split& split) {
  std::vector<Label> out(labels.size(), Label::kUnknown);
  for (int i : split.observed) out[i] = labels[i];
  return LabelSet(std::move(out));
}

void ValidateSweepConfig(const SweepConfig& config) {
  if (config.betas.empty()) ThrowConfigError("beta grid is empty");
  for (double b : config.betas) {
    if (!std::isfinite(b) || b <= 0.0) ThrowConfigError("beta values must be positive");
  }
  if (config.levels.empty()) ThrowConfigError("level list is empty");
  std::set<int> levels;
  for (int l : config.levels) {
    if (l < 0) ThrowConfigError("levels must be >= 0");
    if (!levels.insert(l).second) ThrowConfigError("duplicate level " + std::to_string(l));
  }
  if (config.machines.empty()) ThrowConfigError("machine list is empty");
  std::set<Machine> machines(config.machines.begin(), config.machines.end());
  if (machines.size() != config.machines.size()) ThrowConfigError("duplicate machine");
  if (machines.count(Machine::kSvm) && config.cost_grid.empty()) {
    ThrowConfigError("the SVM needs a non-empty cost grid");
  }
  for (double c : config.cost_grid) {
    if (!std::isfinite(c) || c <= 0.0) ThrowConfigError("costs must be positive");
  }
  if (config.n_splits < 1) ThrowConfigError("n_splits must be >= 1");
  if (!(config.obs_fraction > 0.0 && config.obs_fraction < 1.0)) {
    ThrowConfigError("obs_fraction must lie in (0, 1)");
  }
  if (config.threads < 1) ThrowConfigError("threads must be >= 1");
}

SweepResult RunSweep(const Graph& graph, const LabelSet& labels, const SweepConfig& config) {
  ValidateSweepConfig(config);
  if (labels.size() != graph.size()) ThrowDataError("label count does not match graph");

  const int n_betas = static_cast<int>(config.betas.size());
  const int n_levels = static_cast<int>(config.levels.size());
  const int n_machines = static_cast<int>(config.machines.size());
  const int n_splits = config.n_splits;
  const int max_level = *std::max_element(config.levels.begin(), config.levels.end());
  const bool per_split_bandwidth =
      config.bandwidth_domain == BandwidthDomain::kObservedOnly;

  std::vector<Split> splits;
  std::vector<LabelSet> training;
  std::vector<std::vector<bool>> truths;
  for (int s = 0; s < n_splits; ++s) {
    splits.push_back(StratifiedSplit(labels, config.obs_fraction,
                                     config.master_seed + static_cast<std::uint64_t>(s)));
    training.push_back(TrainingLabels(labels, splits.back()));
  }

  // Phase 1: kernels per (beta, level). With per-split bandwidths only the
  // level-0 kernel is shared.
  const LaplacianMatrix laplacian = Laplacian(graph);
  struct KernelSlot {
    std::optional<KernelMatrix> kernel;
    std::string error;
  };
  std::vector<std::vector<KernelSlot>> kernels(n_betas, std::vector<KernelSlot>(n_levels));
  std::vector<std::optional<KernelMatrix>> base(n_betas);
  ParallelFor(n_betas, config.threads, [&](int b) {
    base[b] = DiffusionKernel(laplacian, config.betas[b]);
    if (per_split_bandwidth) return;
    std::vector<std::optional<KernelMatrix>> chain{*base[b]};
    std::string error;
    for (int level = 1; level <= max_level && error.empty(); ++level) {
      try {
        chain.push_back(Deepen(*chain.back(), 1));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerate) throw;
        error = "degenerate kernel at level " + std::to_string(level) + ": " + e.what();
      }
    }
    for (int l = 0; l < n_levels; ++l) {
      const int level = config.levels[l];
      if (level < static_cast<int>(chain.size())) {
        kernels[b][l].kernel = chain[level];
      } else {
        kernels[b][l].error = error;
      }
    }
  });

  // Phase 2: one task per (beta, level, split) covering every machine.
  struct Outcome {
    bool ok = false;
    double value = 0.0;
    std::optional<double> cost;
    bool hit_limit = false;
    std::string error;
  };
  const int n_tasks = n_betas * n_levels * n_splits;
  std::vector<Outcome> outcomes(static_cast<std::size_t>(n_tasks) * n_machines);
  ParallelFor(n_tasks, config.threads, [&](int task) {
    const int s = task % n_splits;
    const int l = (task / n_splits) % n_levels;
    const int b = task / (n_splits * n_levels);
    Outcome* out = &outcomes[static_cast<std::size_t>(task) * n_machines];
    const LabelSet& train = training[s];

    std::optional<KernelMatrix> kernel;
    std::string error;
    if (per_split_bandwidth) {
      try {
        DeepenOptions options;
        options.domain = BandwidthDomain::kObservedOnly;
        options.observed = train.observed();
        kernel = Deepen(*base[b], config.levels[l], options);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerate) throw;
        error = e.what();
      }
    } else {
      kernel = kernels[b][l].kernel;
      error = kernels[b][l].error;
    }

    std::vector<bool> truth;
    std::vector<int> scored_positions;
    for (std::size_t k = 0; k < train.missing().size(); ++k) {
      const Label actual = labels[train.missing()[k]];
      if (actual == Label::kUnknown) continue;
      scored_positions.push_back(static_cast<int>(k));
      truth.push_back(actual == Label::kClass1);
    }
    const auto evaluate = [&](const DecisionScores& scores) {
      std::vector<double> values;
      for (int k : scored_positions) values.push_back(scores.values[k]);
      return EvaluateMetric(config.metric, values, truth);
    };

    for (int m = 0; m < n_machines; ++m) {
      if (!kernel) {
        out[m].error = error;
        continue;
      }
      try {
        if (config.machines[m] == Machine::kSimple) {
          out[m].value = evaluate(SimpleKmScores(*kernel, train));
        } else {
          const Matrix observed = KernelBlock(*kernel, train.observed(), train.observed());
          std::vector<Label> observed_labels;
          for (int i : train.observed()) observed_labels.push_back(train[i]);
          bool have = false;
          for (double cost : config.cost_grid) {
            const SvmModel model = SvmTrain(observed, observed_labels, cost);
            const double v = evaluate(SvmScores(model, *kernel, train));
            out[m].hit_limit = out[m].hit_limit || model.hit_update_limit;
            if (!have || v > out[m].value) {
              out[m].value = v;
              out[m].cost = cost;
              have = true;
            }
          }
        }
        out[m].ok = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDegenerate) throw;
        out[m].error = e.what();
      }
    }
  });

  SweepResult result;
  for (int b = 0; b < n_betas; ++b) {
    for (int l = 0; l < n_levels; ++l) {
      for (int m = 0; m < n_machines; ++m) {
        const double beta = config.betas[b];
        const int level = config.levels[l];
        const Machine machine = config.machines[m];
        std::vector<SweepRow> cell_rows;
        std::string error;
        int limit_hits = 0;
        for (int s = 0; s < n_splits; ++s) {
          const int task = (b * n_levels + l) * n_splits + s;
          const Outcome& o = outcomes[static_cast<std::size_t>(task) * n_machines + m];
          if (!o.ok) {
            if (error.empty()) error = "split " + std::to_string(s) + ": " + o.error;
            continue;
          }
          limit_hits += o.hit_limit;
          cell_rows.push_back({beta, level, machine, o.cost, s, config.metric, o.value});
        }
        if (!error.empty()) {
          result.diagnostics.push_back("missing cell " + CellName(beta, level, machine) +
                                       ": " + error);
          continue;
        }
        if (limit_hits > 0) {
          result.diagnostics.push_back("SVM iteration cap hit in " +
                                       std::to_string(limit_hits) + " split(s) of cell " +
                                       CellName(beta, level, machine));
        }
        SweepAggregate agg{beta, level, machine, config.metric, 0.0, 0.0, n_splits};
        double sum = 0.0;
        for (const auto& row : cell_rows) sum += row.value;
        agg.mean = sum / n_splits;
        if (n_splits > 1) {
          double ss = 0.0;
          for (const auto& row : cell_rows) ss += (row.value - agg.mean) * (row.value - agg.mean);
          agg.std_error = std::sqrt(ss / (n_splits - 1)) / std::sqrt(static_cast<double>(n_splits));
        }
        result.aggregates.push_back(agg);
        result.rows.insert(result.rows.end(), cell_rows.begin(), cell_rows.end());
      }
    }
  }
  return result;
}

void WriteSweepRows(std::ostream& out, const SweepResult& result) {
  out << "beta,level,machine,cost,split_id,metric,value\n";
  for (const auto& row : result.rows) {
    out << text::FormatDouble(row.beta, 12) << ',' << row.level << ','
        << MachineName(row.machine) << ','
        << (row.cost ? text::FormatDouble(*row.cost, 12) : std::string()) << ','
        << row.split_id << ',' << MetricName(row.metric) << ','
        << text::FormatDouble(row.value, 12) << '\n';
  }
}

void WriteSweepAggregates(std::ostream& out, const SweepResult& result) {
  out << "beta,level,machine,metric,mean,stderr,n_splits\n";
  for (const auto& agg : result.aggregates) {
    out << text::FormatDouble(agg.beta, 12) << ',' << agg.level << ','
        << MachineName(agg.machine) << ',' << MetricName(agg.metric) << ','
        << text::FormatDouble(agg.mean, 12) << ',' << text::FormatDouble(agg.std_error, 12)
        << ',' << agg.n_splits << '\n';
  }
}

}  // namespace dkm
