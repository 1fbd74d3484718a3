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

#include "dkm/commands.h"

#include <fstream>
#include <iostream>
#include <memory>

#include "dkm/error.h"
#include "text_format.h"

namespace dkm {
namespace {

Graph LoadGraphFile(const std::filesystem::path& path, const RunConfig& config) {
  const std::string ext = path.extension().string();
  if (ext == ".csv" || ext == ".tsv" || ext == ".tab") {
    return LoadDenseMatrix(path, config.dense_format.value_or(DenseFormatForPath(path)));
  }
  return LoadEdgeList(path, config.n_hint);
}

// Output stream for `path`, or stdout when unset.
class OutputFile {
 public:
  explicit OutputFile(const std::optional<std::filesystem::path>& path) {
    if (!path) return;
    file_ = std::make_unique<std::ofstream>(*path);
    if (!*file_) ThrowDataError("cannot open '" + path->string() + "' for writing");
    path_ = path->string();
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void Close() {
    if (!file_) {
      std::cout.flush();
      return;
    }
    file_->close();
    if (file_->fail()) ThrowDataError("failed writing '" + path_ + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

double SingleBeta(const RunConfig& config) {
  if (config.betas.size() != 1) ThrowConfigError("this command needs exactly one beta");
  if (!(config.betas[0] >= 0.0)) ThrowConfigError("beta must be >= 0");
  return config.betas[0];
}

int SingleLevel(const RunConfig& config) {
  if (config.levels.empty()) return 0;
  if (config.levels.size() != 1) ThrowConfigError("this command needs exactly one level");
  if (config.levels[0] < 0) ThrowConfigError("level must be >= 0");
  return config.levels[0];
}

}  // namespace

LoadedData LoadData(const RunConfig& config, std::ostream& diagnostics) {
  const int sources = config.edge_list.has_value() + config.dense_matrix.has_value() +
                      !config.blend.empty() + config.sbm.has_value();
  if (sources != 1) {
    ThrowConfigError("set exactly one of edge_list, dense_matrix, blend, sbm_* (got " +
                     std::to_string(sources) + ")");
  }

  std::optional<Graph> graph;
  std::optional<LabelSet> labels;
  if (config.edge_list) {
    graph = LoadEdgeList(*config.edge_list, config.n_hint);
  } else if (config.dense_matrix) {
    graph = LoadDenseMatrix(*config.dense_matrix,
                            config.dense_format.value_or(DenseFormatForPath(*config.dense_matrix)));
  } else if (!config.blend.empty()) {
    std::vector<Graph> parts;
    std::vector<double> weights;
    for (const auto& entry : config.blend) {
      Graph g = LoadGraphFile(entry.path, config);
      if (!parts.empty() && g.node_ids() != parts.front().node_ids()) {
        g = ReorderNodes(g, parts.front().node_ids());
      }
      parts.push_back(std::move(g));
      weights.push_back(entry.weight);
    }
    graph = BlendSimilarity(parts, weights);
  } else {
    LabeledGraph generated = GenerateSbm(*config.sbm);
    graph = std::move(generated.graph);
    labels = std::move(generated.labels);
  }
  if (graph->symmetrized_input()) {
    diagnostics << "warning: input matrix was asymmetric; using (M + M^T) / 2\n";
  }
  if (config.labels) labels = LoadLabels(*config.labels, *graph);

  if (config.drop_isolated) {
    PrunedGraph pruned = DropIsolated(*graph);
    if (!pruned.removed.empty()) {
      diagnostics << "dropped " << pruned.removed.size() << " isolated node(s):";
      for (const auto& id : pruned.removed) diagnostics << ' ' << id;
      diagnostics << '\n';
      if (labels) labels = RestrictLabels(*labels, *graph, pruned.graph);
      graph = std::move(pruned.graph);
    }
  }
  return {std::move(*graph), std::move(labels)};
}

void WriteScoresCsv(std::ostream& out, const Graph& graph,
                    const std::vector<DecisionScores>& score_sets,
                    const std::vector<std::optional<double>>& thresholds) {
  bool with_labels = false;
  for (const auto& t : thresholds) with_labels = with_labels || t.has_value();
  out << "node_id,score,machine,level,beta,cost" << (with_labels ? ",label" : "") << '\n';
  for (std::size_t s = 0; s < score_sets.size(); ++s) {
    const DecisionScores& scores = score_sets[s];
    std::vector<Label> hard;
    if (s < thresholds.size() && thresholds[s]) hard = ClassifyThreshold(scores, *thresholds[s]);
    for (int k = 0; k < scores.size(); ++k) {
      out << graph.node_id(scores.nodes[k]) << ',' << text::FormatDouble(scores.values[k], 17)
          << ',' << MachineName(scores.machine) << ',' << scores.level << ','
          << text::FormatDouble(scores.beta, 17) << ','
          << (scores.cost ? text::FormatDouble(*scores.cost, 17) : std::string());
      if (with_labels) {
        out << ',';
        if (!hard.empty()) out << (hard[k] == Label::kClass1 ? '1' : '2');
      }
      out << '\n';
    }
  }
}

void CmdKernel(const RunConfig& config, std::ostream& diagnostics) {
  const double beta = SingleBeta(config);
  const int level = SingleLevel(config);
  const LoadedData data = LoadData(config, diagnostics);
  const KernelMatrix base = DiffusionKernel(Laplacian(data.graph), beta);
  DeepenOptions options;
  options.domain = config.bandwidth_domain;
  if (options.domain == BandwidthDomain::kObservedOnly) {
    if (!data.labels) ThrowConfigError("bandwidth_domain = obs_only needs a label file");
    options.observed = data.labels->observed();
  }
  const KernelMatrix kernel = Deepen(base, level, options);
  OutputFile out(config.output);
  WriteKernelCsv(out.stream(), kernel);
  out.Close();
}

void CmdClassify(const RunConfig& config, std::ostream& diagnostics) {
  const double beta = SingleBeta(config);
  const int level = SingleLevel(config);
  if (config.machines.empty()) ThrowConfigError("machine list is empty");
  const LoadedData data = LoadData(config, diagnostics);
  if (!data.labels) ThrowConfigError("classify needs a label file");
  const LabelSet& labels = *data.labels;
  labels.RequireBothClasses();

  const KernelMatrix base = DiffusionKernel(Laplacian(data.graph), beta);
  std::vector<DecisionScores> score_sets;
  std::vector<std::optional<double>> thresholds;
  for (Machine machine : config.machines) {
    auto sets = DkmRun(base, labels, level, machine, config.cost_grid, config.bandwidth_domain);
    std::optional<double> threshold;
    if (config.hard_labels && machine == Machine::kSimple) {
      DeepenOptions options;
      options.domain = config.bandwidth_domain;
      options.observed = labels.observed();
      threshold = CentroidThreshold(Deepen(base, level, options), labels);
    }
    for (auto& set : sets) {
      if (set.solver_hit_limit) {
        diagnostics << "SVM iteration cap hit at cost "
                    << text::FormatDouble(set.cost.value_or(0.0), 12) << '\n';
      }
      score_sets.push_back(std::move(set));
      thresholds.push_back(threshold);
    }
  }
  OutputFile out(config.output);
  WriteScoresCsv(out.stream(), data.graph, score_sets, thresholds);
  out.Close();
}

void CmdSweep(const RunConfig& config, std::ostream& diagnostics) {
  if (!config.output) ThrowConfigError("sweep needs 'output'");
  const SweepConfig sweep = config.ToSweepConfig();
  ValidateSweepConfig(sweep);
  const LoadedData data = LoadData(config, diagnostics);
  if (!data.labels) ThrowConfigError("sweep needs labels (label file or SBM source)");

  // Open both outputs before the run so an unwritable path fails fast.
  std::filesystem::path aggregate_path;
  if (config.aggregate_output) {
    aggregate_path = *config.aggregate_output;
  } else {
    aggregate_path = *config.output;
    aggregate_path.replace_filename(config.output->stem().string() + "_aggregate" +
                                    config.output->extension().string());
  }
  OutputFile rows_out(config.output);
  OutputFile agg_out(aggregate_path);

  const SweepResult result = RunSweep(data.graph, *data.labels, sweep);
  for (const auto& line : result.diagnostics) diagnostics << line << '\n';
  WriteSweepRows(rows_out.stream(), result);
  WriteSweepAggregates(agg_out.stream(), result);
  rows_out.Close();
  agg_out.Close();
}

void CmdGenerate(const RunConfig& config, std::ostream& diagnostics) {
  if (!config.sbm) ThrowConfigError("generate needs sbm_sizes / sbm_p_in / sbm_p_out");
  if (!config.edges_out || !config.labels_out) {
    ThrowConfigError("generate needs edges_out and labels_out");
  }
  const LabeledGraph generated = GenerateSbm(*config.sbm);
  OutputFile edges(config.edges_out);
  OutputFile labels(config.labels_out);
  WriteEdgeList(edges.stream(), generated.graph);
  WriteLabels(labels.stream(), generated.graph, generated.labels);
  edges.Close();
  labels.Close();
  const auto isolated = (generated.graph.Degrees().array() == 0.0).count();
  if (isolated > 0) {
    diagnostics << "generated graph has " << isolated
                << " isolated node(s); load with n_hint = " << generated.graph.size() << '\n';
  }
}

void RunCommand(std::string_view command, const RunConfig& config,
                std::ostream& fallback_diagnostics) {
  std::unique_ptr<std::ofstream> diag_file;
  if (config.diagnostics) {
    diag_file = std::make_unique<std::ofstream>(*config.diagnostics);
    if (!*diag_file) {
      ThrowDataError("cannot open '" + config.diagnostics->string() + "' for writing");
    }
  }
  std::ostream& diagnostics = diag_file ? *diag_file : fallback_diagnostics;
  if (command == "kernel") {
    CmdKernel(config, diagnostics);
  } else if (command == "classify") {
    CmdClassify(config, diagnostics);
  } else if (command == "sweep") {
    CmdSweep(config, diagnostics);
  } else if (command == "generate") {
    CmdGenerate(config, diagnostics);
  } else {
    ThrowConfigError("unknown command '" + std::string(command) + "'");
  }
}

}  // namespace dkm
