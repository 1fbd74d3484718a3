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

#ifndef DKM_DKM_H_
#define DKM_DKM_H_

/* C interface to the deep kernel machine library.
 *
 * Every object is an opaque handle released with its *_free function.
 * Functions returning dkm_status leave a message retrievable with
 * dkm_last_error() (thread-local, valid until the next failing call on the
 * same thread). Status values equal the CLI exit codes. */

#include <stddef.h>
#include <stdint.h>

#if defined(DKM_BUILDING_LIBRARY)
#define DKM_API __attribute__((visibility("default")))
#else
#define DKM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dkm_status {
  DKM_OK = 0,
  DKM_ERR_INTERNAL = 1,
  DKM_ERR_CONFIG = 2,
  DKM_ERR_DATA = 3,
  DKM_ERR_DEGENERATE = 4,
  DKM_ERR_INVALID_ARGUMENT = 5
} dkm_status;

typedef enum dkm_dense_format { DKM_DENSE_CSV = 0, DKM_DENSE_TSV = 1 } dkm_dense_format;
typedef enum dkm_machine { DKM_MACHINE_SIMPLE = 0, DKM_MACHINE_SVM = 1 } dkm_machine;
typedef enum dkm_metric { DKM_METRIC_AP = 0, DKM_METRIC_AUC = 1 } dkm_metric;
typedef enum dkm_bandwidth_domain {
  DKM_BANDWIDTH_ALL_NODES = 0,
  DKM_BANDWIDTH_OBS_ONLY = 1
} dkm_bandwidth_domain;

typedef struct dkm_graph dkm_graph;
typedef struct dkm_labels dkm_labels;
typedef struct dkm_kernel dkm_kernel;
typedef struct dkm_scores dkm_scores;
typedef struct dkm_config dkm_config;

DKM_API const char* dkm_version(void);
DKM_API const char* dkm_last_error(void);
DKM_API const char* dkm_status_string(dkm_status status);

/* Graphs. n_hint < 0 means none. */
DKM_API dkm_status dkm_graph_load_edge_list(const char* path, int n_hint, dkm_graph** out);
DKM_API dkm_status dkm_graph_load_dense(const char* path, dkm_dense_format format,
                                        dkm_graph** out);
/* weights: n*n row-major; ids may be NULL ("0".."n-1"). */
DKM_API dkm_status dkm_graph_from_matrix(size_t n, const double* weights,
                                         const char* const* ids, dkm_graph** out);
DKM_API dkm_status dkm_graph_generate_sbm(int size1, int size2, double p_in, double p_out,
                                          uint64_t seed, dkm_graph** graph,
                                          dkm_labels** labels);
DKM_API dkm_status dkm_graph_drop_isolated(const dkm_graph* graph, dkm_graph** out,
                                           size_t* removed_count);
DKM_API dkm_status dkm_graph_blend(const dkm_graph* const* graphs, const double* weights,
                                   size_t count, dkm_graph** out);
DKM_API size_t dkm_graph_size(const dkm_graph* graph);
DKM_API const char* dkm_graph_node_id(const dkm_graph* graph, size_t index);
DKM_API int dkm_graph_was_symmetrized(const dkm_graph* graph);
/* Copies the n*n weights row-major; capacity is in doubles. */
DKM_API dkm_status dkm_graph_copy_weights(const dkm_graph* graph, double* out,
                                          size_t capacity);
DKM_API void dkm_graph_free(dkm_graph* graph);

/* Labels: codes 0 = unknown, 1 = class 1, 2 = class 2. */
DKM_API dkm_status dkm_labels_load(const char* path, const dkm_graph* graph,
                                   dkm_labels** out);
DKM_API dkm_status dkm_labels_from_codes(const int* codes, size_t n, dkm_labels** out);
DKM_API size_t dkm_labels_size(const dkm_labels* labels);
DKM_API int dkm_labels_get(const dkm_labels* labels, size_t index);
DKM_API void dkm_labels_free(dkm_labels* labels);

/* Kernels. labels may be NULL unless domain is DKM_BANDWIDTH_OBS_ONLY. */
DKM_API dkm_status dkm_kernel_diffusion(const dkm_graph* graph, double beta,
                                        dkm_kernel** out);
DKM_API dkm_status dkm_kernel_deepen(const dkm_kernel* kernel, int levels,
                                     dkm_bandwidth_domain domain,
                                     const dkm_labels* labels, dkm_kernel** out);
DKM_API size_t dkm_kernel_size(const dkm_kernel* kernel);
DKM_API int dkm_kernel_level(const dkm_kernel* kernel);
DKM_API double dkm_kernel_beta(const dkm_kernel* kernel);
DKM_API size_t dkm_kernel_bandwidth_count(const dkm_kernel* kernel);
DKM_API double dkm_kernel_bandwidth(const dkm_kernel* kernel, size_t index);
DKM_API dkm_status dkm_kernel_copy_values(const dkm_kernel* kernel, double* out,
                                          size_t capacity);
DKM_API dkm_status dkm_kernel_write_csv(const dkm_kernel* kernel, const char* path);
DKM_API dkm_status dkm_kernel_read_csv(const char* path, dkm_kernel** out);
DKM_API void dkm_kernel_free(dkm_kernel* kernel);

/* Scores for the unlabeled nodes. cost is ignored for the simple machine. */
DKM_API dkm_status dkm_classify(const dkm_kernel* kernel, const dkm_labels* labels,
                                dkm_machine machine, double cost, dkm_scores** out);
DKM_API dkm_status dkm_centroid_threshold(const dkm_kernel* kernel,
                                          const dkm_labels* labels, double* out);
DKM_API size_t dkm_scores_size(const dkm_scores* scores);
DKM_API size_t dkm_scores_node(const dkm_scores* scores, size_t index);
DKM_API double dkm_scores_value(const dkm_scores* scores, size_t index);
DKM_API void dkm_scores_free(dkm_scores* scores);

/* truth[i] != 0 marks a positive. */
DKM_API dkm_status dkm_metric_compute(dkm_metric metric, const double* scores,
                                      const int* truth, size_t n, double* out);

/* Run configuration and commands ("kernel", "classify", "sweep", "generate"). */
DKM_API dkm_status dkm_config_create(dkm_config** out);
DKM_API dkm_status dkm_config_load_file(dkm_config* config, const char* path);
DKM_API dkm_status dkm_config_set(dkm_config* config, const char* key, const char* value);
DKM_API dkm_status dkm_run_command(const dkm_config* config, const char* command);
DKM_API void dkm_config_free(dkm_config* config);

#ifdef __cplusplus
}
#endif

#endif  /* DKM_DKM_H_ */
