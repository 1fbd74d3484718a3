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

#include "dkm/dkm.h"

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dkm/commands.h"
#include "dkm/error.h"
#include "dkm/eval.h"
#include "dkm/graph.h"
#include "dkm/kernel.h"
#include "dkm/machines.h"
#include "dkm/run_config.h"

struct dkm_graph {
  dkm::Graph graph;
};
struct dkm_labels {
  dkm::LabelSet labels;
};
struct dkm_kernel {
  dkm::KernelMatrix kernel;
};
struct dkm_scores {
  dkm::DecisionScores scores;
};
struct dkm_config {
  dkm::RunConfig config;
};

namespace {

thread_local std::string g_last_error;

dkm_status Fail(dkm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
dkm_status Guard(Fn&& fn) {
  try {
    fn();
    return DKM_OK;
  } catch (const dkm::Error& e) {
    return Fail(static_cast<dkm_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(DKM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(DKM_ERR_INTERNAL, e.what());
  }
}

#define DKM_REQUIRE(cond)                                                   \
  do {                                                                      \
    if (!(cond)) return Fail(DKM_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

dkm::Label LabelFromCode(int code) {
  switch (code) {
    case 0: return dkm::Label::kUnknown;
    case 1: return dkm::Label::kClass1;
    case 2: return dkm::Label::kClass2;
  }
  dkm::ThrowDataError("label code must be 0, 1 or 2, got " + std::to_string(code));
}

}  // namespace

extern "C" {

const char* dkm_version(void) { return "1.0.0"; }

const char* dkm_last_error(void) { return g_last_error.c_str(); }

const char* dkm_status_string(dkm_status status) {
  switch (status) {
    case DKM_OK: return "ok";
    case DKM_ERR_INVALID_ARGUMENT: return "invalid argument";
    default: return dkm::ErrorCodeName(static_cast<dkm::ErrorCode>(status));
  }
}

dkm_status dkm_graph_load_edge_list(const char* path, int n_hint, dkm_graph** out) {
  DKM_REQUIRE(path && out);
  return Guard([&] {
    std::optional<int> hint;
    if (n_hint >= 0) hint = n_hint;
    *out = new dkm_graph{dkm::LoadEdgeList(path, hint)};
  });
}

dkm_status dkm_graph_load_dense(const char* path, dkm_dense_format format, dkm_graph** out) {
  DKM_REQUIRE(path && out);
  return Guard([&] {
    const auto fmt = format == DKM_DENSE_TSV ? dkm::DenseFormat::kTsv : dkm::DenseFormat::kCsv;
    *out = new dkm_graph{dkm::LoadDenseMatrix(path, fmt)};
  });
}

dkm_status dkm_graph_from_matrix(size_t n, const double* weights, const char* const* ids,
                                 dkm_graph** out) {
  DKM_REQUIRE(weights && out && n > 0);
  return Guard([&] {
    dkm::Matrix w(n, n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) w(i, j) = weights[i * n + j];
    }
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i) {
      names.push_back(ids && ids[i] ? std::string(ids[i]) : std::to_string(i));
    }
    *out = new dkm_graph{dkm::Graph(std::move(names), std::move(w))};
  });
}

dkm_status dkm_graph_generate_sbm(int size1, int size2, double p_in, double p_out,
                                  uint64_t seed, dkm_graph** graph, dkm_labels** labels) {
  DKM_REQUIRE(graph && labels);
  return Guard([&] {
    dkm::LabeledGraph g = dkm::GenerateSbm({{size1, size2}, p_in, p_out, seed});
    auto* gh = new dkm_graph{std::move(g.graph)};
    *labels = new dkm_labels{std::move(g.labels)};
    *graph = gh;
  });
}

dkm_status dkm_graph_drop_isolated(const dkm_graph* graph, dkm_graph** out,
                                   size_t* removed_count) {
  DKM_REQUIRE(graph && out);
  return Guard([&] {
    dkm::PrunedGraph pruned = dkm::DropIsolated(graph->graph);
    if (removed_count) *removed_count = pruned.removed.size();
    *out = new dkm_graph{std::move(pruned.graph)};
  });
}

dkm_status dkm_graph_blend(const dkm_graph* const* graphs, const double* weights,
                           size_t count, dkm_graph** out) {
  DKM_REQUIRE(graphs && weights && out && count > 0);
  for (size_t k = 0; k < count; ++k) DKM_REQUIRE(graphs[k]);
  return Guard([&] {
    std::vector<dkm::Graph> parts;
    for (size_t k = 0; k < count; ++k) parts.push_back(graphs[k]->graph);
    *out = new dkm_graph{dkm::BlendSimilarity(parts, std::span(weights, count))};
  });
}

size_t dkm_graph_size(const dkm_graph* graph) {
  return graph ? static_cast<size_t>(graph->graph.size()) : 0;
}

const char* dkm_graph_node_id(const dkm_graph* graph, size_t index) {
  if (!graph || index >= static_cast<size_t>(graph->graph.size())) return nullptr;
  return graph->graph.node_id(static_cast<int>(index)).c_str();
}

int dkm_graph_was_symmetrized(const dkm_graph* graph) {
  return graph && graph->graph.symmetrized_input() ? 1 : 0;
}

dkm_status dkm_graph_copy_weights(const dkm_graph* graph, double* out, size_t capacity) {
  DKM_REQUIRE(graph && out);
  const auto n = static_cast<size_t>(graph->graph.size());
  DKM_REQUIRE(capacity >= n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) out[i * n + j] = graph->graph.weights()(i, j);
  }
  return DKM_OK;
}

void dkm_graph_free(dkm_graph* graph) { delete graph; }

dkm_status dkm_labels_load(const char* path, const dkm_graph* graph, dkm_labels** out) {
  DKM_REQUIRE(path && graph && out);
  return Guard([&] { *out = new dkm_labels{dkm::LoadLabels(path, graph->graph)}; });
}

dkm_status dkm_labels_from_codes(const int* codes, size_t n, dkm_labels** out) {
  DKM_REQUIRE(codes && out);
  return Guard([&] {
    std::vector<dkm::Label> labels;
    for (size_t i = 0; i < n; ++i) labels.push_back(LabelFromCode(codes[i]));
    *out = new dkm_labels{dkm::LabelSet(std::move(labels))};
  });
}

size_t dkm_labels_size(const dkm_labels* labels) {
  return labels ? static_cast<size_t>(labels->labels.size()) : 0;
}

int dkm_labels_get(const dkm_labels* labels, size_t index) {
  if (!labels || index >= static_cast<size_t>(labels->labels.size())) return -1;
  return static_cast<int>(labels->labels[static_cast<int>(index)]);
}

void dkm_labels_free(dkm_labels* labels) { delete labels; }

dkm_status dkm_kernel_diffusion(const dkm_graph* graph, double beta, dkm_kernel** out) {
  DKM_REQUIRE(graph && out);
  return Guard([&] {
    *out = new dkm_kernel{dkm::DiffusionKernel(dkm::Laplacian(graph->graph), beta)};
  });
}

dkm_status dkm_kernel_deepen(const dkm_kernel* kernel, int levels,
                             dkm_bandwidth_domain domain, const dkm_labels* labels,
                             dkm_kernel** out) {
  DKM_REQUIRE(kernel && out);
  DKM_REQUIRE(domain == DKM_BANDWIDTH_ALL_NODES || labels);
  return Guard([&] {
    dkm::DeepenOptions options;
    if (domain == DKM_BANDWIDTH_OBS_ONLY) {
      if (labels->labels.size() != kernel->kernel.size()) {
        dkm::ThrowDataError("label count does not match kernel size");
      }
      options.domain = dkm::BandwidthDomain::kObservedOnly;
      options.observed = labels->labels.observed();
    }
    *out = new dkm_kernel{dkm::Deepen(kernel->kernel, levels, options)};
  });
}

size_t dkm_kernel_size(const dkm_kernel* kernel) {
  return kernel ? static_cast<size_t>(kernel->kernel.size()) : 0;
}

int dkm_kernel_level(const dkm_kernel* kernel) {
  return kernel ? kernel->kernel.provenance().level : -1;
}

double dkm_kernel_beta(const dkm_kernel* kernel) {
  return kernel ? kernel->kernel.provenance().beta : 0.0;
}

size_t dkm_kernel_bandwidth_count(const dkm_kernel* kernel) {
  return kernel ? kernel->kernel.provenance().bandwidths.size() : 0;
}

double dkm_kernel_bandwidth(const dkm_kernel* kernel, size_t index) {
  if (!kernel || index >= kernel->kernel.provenance().bandwidths.size()) return 0.0;
  return kernel->kernel.provenance().bandwidths[index];
}

dkm_status dkm_kernel_copy_values(const dkm_kernel* kernel, double* out, size_t capacity) {
  DKM_REQUIRE(kernel && out);
  const auto n = static_cast<size_t>(kernel->kernel.size());
  DKM_REQUIRE(capacity >= n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) out[i * n + j] = kernel->kernel(i, j);
  }
  return DKM_OK;
}

dkm_status dkm_kernel_write_csv(const dkm_kernel* kernel, const char* path) {
  DKM_REQUIRE(kernel && path);
  return Guard([&] {
    std::ofstream out(path);
    if (!out) dkm::ThrowDataError(std::string("cannot open '") + path + "' for writing");
    dkm::WriteKernelCsv(out, kernel->kernel);
    out.close();
    if (out.fail()) dkm::ThrowDataError(std::string("failed writing '") + path + "'");
  });
}

dkm_status dkm_kernel_read_csv(const char* path, dkm_kernel** out) {
  DKM_REQUIRE(path && out);
  return Guard([&] {
    std::ifstream in(path);
    if (!in) dkm::ThrowDataError(std::string("cannot open '") + path + "' for reading");
    *out = new dkm_kernel{dkm::ReadKernelCsv(in, path)};
  });
}

void dkm_kernel_free(dkm_kernel* kernel) { delete kernel; }

dkm_status dkm_classify(const dkm_kernel* kernel, const dkm_labels* labels,
                        dkm_machine machine, double cost, dkm_scores** out) {
  DKM_REQUIRE(kernel && labels && out);
  DKM_REQUIRE(machine == DKM_MACHINE_SIMPLE || machine == DKM_MACHINE_SVM);
  return Guard([&] {
    const dkm::Machine m =
        machine == DKM_MACHINE_SVM ? dkm::Machine::kSvm : dkm::Machine::kSimple;
    const double grid[] = {cost};
    auto sets = dkm::DkmRun(kernel->kernel, labels->labels, 0, m, grid);
    *out = new dkm_scores{std::move(sets.front())};
  });
}

dkm_status dkm_centroid_threshold(const dkm_kernel* kernel, const dkm_labels* labels,
                                  double* out) {
  DKM_REQUIRE(kernel && labels && out);
  return Guard([&] { *out = dkm::CentroidThreshold(kernel->kernel, labels->labels); });
}

size_t dkm_scores_size(const dkm_scores* scores) {
  return scores ? scores->scores.nodes.size() : 0;
}

size_t dkm_scores_node(const dkm_scores* scores, size_t index) {
  if (!scores || index >= scores->scores.nodes.size()) return static_cast<size_t>(-1);
  return static_cast<size_t>(scores->scores.nodes[index]);
}

double dkm_scores_value(const dkm_scores* scores, size_t index) {
  if (!scores || index >= scores->scores.values.size()) return 0.0;
  return scores->scores.values[index];
}

void dkm_scores_free(dkm_scores* scores) { delete scores; }

dkm_status dkm_metric_compute(dkm_metric metric, const double* scores, const int* truth,
                              size_t n, double* out) {
  DKM_REQUIRE(scores && truth && out);
  return Guard([&] {
    std::vector<bool> t(n);
    for (size_t i = 0; i < n; ++i) t[i] = truth[i] != 0;
    const auto m = metric == DKM_METRIC_AP ? dkm::Metric::kAp : dkm::Metric::kAuc;
    *out = dkm::EvaluateMetric(m, std::span(scores, n), t);
  });
}

dkm_status dkm_config_create(dkm_config** out) {
  DKM_REQUIRE(out);
  return Guard([&] { *out = new dkm_config{}; });
}

dkm_status dkm_config_load_file(dkm_config* config, const char* path) {
  DKM_REQUIRE(config && path);
  return Guard([&] { config->config.LoadFile(path); });
}

dkm_status dkm_config_set(dkm_config* config, const char* key, const char* value) {
  DKM_REQUIRE(config && key && value);
  return Guard([&] { config->config.Set(key, value); });
}

dkm_status dkm_run_command(const dkm_config* config, const char* command) {
  DKM_REQUIRE(config && command);
  return Guard([&] { dkm::RunCommand(command, config->config, std::cerr); });
}

void dkm_config_free(dkm_config* config) { delete config; }

}  // extern "C"
