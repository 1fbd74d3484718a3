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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

std::filesystem::path TempDir() {
  auto dir = std::filesystem::temp_directory_path() / "dkm_c_api_test";
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(CApiTest, StatusStrings) {
  EXPECT_STREQ(dkm_status_string(DKM_OK), "ok");
  EXPECT_STREQ(dkm_status_string(DKM_ERR_DEGENERATE), "numerical degeneracy");
  EXPECT_NE(dkm_version()[0], '\0');
}

TEST(CApiTest, NullArgumentsAreRejected) {
  EXPECT_EQ(dkm_graph_load_edge_list(nullptr, -1, nullptr), DKM_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(dkm_last_error()).find("invalid argument"), std::string::npos);
  EXPECT_EQ(dkm_graph_size(nullptr), 0u);
  dkm_graph_free(nullptr);
}

TEST(CApiTest, SingleEdgePipeline) {
  const double w[] = {0, 1, 1, 0};
  const char* ids[] = {"a", "b"};
  dkm_graph* g = nullptr;
  ASSERT_EQ(dkm_graph_from_matrix(2, w, ids, &g), DKM_OK);
  EXPECT_EQ(dkm_graph_size(g), 2u);
  EXPECT_STREQ(dkm_graph_node_id(g, 1), "b");
  EXPECT_EQ(dkm_graph_node_id(g, 2), nullptr);

  dkm_kernel* k = nullptr;
  ASSERT_EQ(dkm_kernel_diffusion(g, 0.5, &k), DKM_OK);
  double values[4];
  ASSERT_EQ(dkm_kernel_copy_values(k, values, 4), DKM_OK);
  EXPECT_NEAR(values[1], (1 - std::exp(-1.0)) / 2, 1e-14);
  EXPECT_EQ(dkm_kernel_copy_values(k, values, 3), DKM_ERR_INVALID_ARGUMENT);

  dkm_kernel* deep = nullptr;
  ASSERT_EQ(dkm_kernel_deepen(k, 2, DKM_BANDWIDTH_ALL_NODES, nullptr, &deep), DKM_OK);
  EXPECT_EQ(dkm_kernel_level(deep), 2);
  EXPECT_EQ(dkm_kernel_bandwidth_count(deep), 2u);
  EXPECT_GT(dkm_kernel_bandwidth(deep, 1), 0.0);
  EXPECT_EQ(dkm_kernel_beta(deep), 0.5);

  const auto path = (TempDir() / "k.csv").string();
  ASSERT_EQ(dkm_kernel_write_csv(deep, path.c_str()), DKM_OK);
  dkm_kernel* back = nullptr;
  ASSERT_EQ(dkm_kernel_read_csv(path.c_str(), &back), DKM_OK);
  double a[4], b[4];
  dkm_kernel_copy_values(deep, a, 4);
  dkm_kernel_copy_values(back, b, 4);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(a[i], b[i]);

  dkm_kernel_free(back);
  dkm_kernel_free(deep);
  dkm_kernel_free(k);
  dkm_graph_free(g);
}

TEST(CApiTest, ErrorsMapToStatus) {
  dkm_graph* g = nullptr;
  EXPECT_EQ(dkm_graph_load_edge_list("/nonexistent/edges.txt", -1, &g), DKM_ERR_DATA);
  EXPECT_EQ(g, nullptr);
  EXPECT_NE(std::string(dkm_last_error()).find("nonexistent"), std::string::npos);

  const double tri[] = {0, 1, 1, 1, 0, 1, 1, 1, 0};
  ASSERT_EQ(dkm_graph_from_matrix(3, tri, nullptr, &g), DKM_OK);
  EXPECT_STREQ(dkm_graph_node_id(g, 0), "0");
  dkm_kernel* k = nullptr;
  ASSERT_EQ(dkm_kernel_diffusion(g, 1000.0, &k), DKM_OK);
  dkm_kernel* deep = nullptr;
  EXPECT_EQ(dkm_kernel_deepen(k, 1, DKM_BANDWIDTH_ALL_NODES, nullptr, &deep), DKM_ERR_DEGENERATE);
  dkm_kernel* neg = nullptr;
  EXPECT_EQ(dkm_kernel_diffusion(g, -1.0, &neg), DKM_ERR_CONFIG);
  dkm_kernel_free(k);
  dkm_graph_free(g);

  const double bad[] = {0, -1, -1, 0};
  EXPECT_EQ(dkm_graph_from_matrix(2, bad, nullptr, &g), DKM_ERR_DATA);
}

TEST(CApiTest, ClassifyAndMetric) {
  dkm_graph* g = nullptr;
  dkm_labels* truth = nullptr;
  ASSERT_EQ(dkm_graph_generate_sbm(10, 10, 0.6, 0.05, 3, &g, &truth), DKM_OK);
  ASSERT_EQ(dkm_labels_size(truth), 20u);

  std::vector<int> codes(20);
  for (int i = 0; i < 20; ++i) codes[i] = i % 2 == 0 ? dkm_labels_get(truth, i) : 0;
  dkm_labels* train = nullptr;
  ASSERT_EQ(dkm_labels_from_codes(codes.data(), codes.size(), &train), DKM_OK);
  codes[0] = 7;
  dkm_labels* invalid = nullptr;
  EXPECT_EQ(dkm_labels_from_codes(codes.data(), codes.size(), &invalid), DKM_ERR_DATA);

  dkm_kernel* k = nullptr;
  ASSERT_EQ(dkm_kernel_diffusion(g, 0.2, &k), DKM_OK);
  for (dkm_machine m : {DKM_MACHINE_SIMPLE, DKM_MACHINE_SVM}) {
    dkm_scores* s = nullptr;
    ASSERT_EQ(dkm_classify(k, train, m, 1.0, &s), DKM_OK);
    ASSERT_EQ(dkm_scores_size(s), 10u);
    std::vector<double> values;
    std::vector<int> positive;
    for (size_t i = 0; i < dkm_scores_size(s); ++i) {
      const size_t node = dkm_scores_node(s, i);
      EXPECT_EQ(node % 2, 1u);
      values.push_back(dkm_scores_value(s, i));
      positive.push_back(dkm_labels_get(truth, node) == 1);
    }
    double auc = 0.0;
    ASSERT_EQ(dkm_metric_compute(DKM_METRIC_AUC, values.data(), positive.data(), values.size(), &auc),
              DKM_OK);
    EXPECT_GT(auc, 0.8);
    dkm_scores_free(s);
  }
  double c = 0.0;
  EXPECT_EQ(dkm_centroid_threshold(k, train, &c), DKM_OK);

  dkm_kernel* obs = nullptr;
  EXPECT_EQ(dkm_kernel_deepen(k, 1, DKM_BANDWIDTH_OBS_ONLY, nullptr, &obs), DKM_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(dkm_kernel_deepen(k, 1, DKM_BANDWIDTH_OBS_ONLY, train, &obs), DKM_OK);
  dkm_kernel_free(obs);

  dkm_kernel_free(k);
  dkm_labels_free(train);
  dkm_labels_free(truth);
  dkm_graph_free(g);
}

TEST(CApiTest, DropIsolatedAndBlend) {
  const double w[] = {0, 1, 0, 1, 0, 0, 0, 0, 0};
  dkm_graph* g = nullptr;
  ASSERT_EQ(dkm_graph_from_matrix(3, w, nullptr, &g), DKM_OK);
  dkm_graph* pruned = nullptr;
  size_t removed = 0;
  ASSERT_EQ(dkm_graph_drop_isolated(g, &pruned, &removed), DKM_OK);
  EXPECT_EQ(removed, 1u);
  EXPECT_EQ(dkm_graph_size(pruned), 2u);

  const dkm_graph* parts[] = {g, g};
  const double weights[] = {0.5, 0.5};
  dkm_graph* blended = nullptr;
  ASSERT_EQ(dkm_graph_blend(parts, weights, 2, &blended), DKM_OK);
  double out[9];
  ASSERT_EQ(dkm_graph_copy_weights(blended, out, 9), DKM_OK);
  EXPECT_EQ(out[1], 1.0);
  EXPECT_EQ(dkm_graph_was_symmetrized(blended), 0);
  dkm_graph_free(blended);
  dkm_graph_free(pruned);
  dkm_graph_free(g);
}

TEST(CApiTest, ConfigAndCommands) {
  dkm_config* cfg = nullptr;
  ASSERT_EQ(dkm_config_create(&cfg), DKM_OK);
  EXPECT_EQ(dkm_config_set(cfg, "no_such_key", "1"), DKM_ERR_CONFIG);
  EXPECT_EQ(dkm_config_set(cfg, "metric", "F1"), DKM_ERR_CONFIG);
  EXPECT_EQ(dkm_run_command(cfg, "bogus"), DKM_ERR_CONFIG);

  const auto dir = TempDir();
  const auto edges = (dir / "gen_edges.txt").string();
  const auto labels = (dir / "gen_labels.txt").string();
  ASSERT_EQ(dkm_config_set(cfg, "sbm_sizes", "3,3"), DKM_OK);
  ASSERT_EQ(dkm_config_set(cfg, "sbm_p_in", "1"), DKM_OK);
  ASSERT_EQ(dkm_config_set(cfg, "sbm_p_out", "0"), DKM_OK);
  ASSERT_EQ(dkm_config_set(cfg, "edges_out", edges.c_str()), DKM_OK);
  ASSERT_EQ(dkm_config_set(cfg, "labels_out", labels.c_str()), DKM_OK);
  ASSERT_EQ(dkm_run_command(cfg, "generate"), DKM_OK);
  dkm_config_free(cfg);

  dkm_graph* g = nullptr;
  ASSERT_EQ(dkm_graph_load_edge_list(edges.c_str(), 6, &g), DKM_OK);
  dkm_labels* l = nullptr;
  ASSERT_EQ(dkm_labels_load(labels.c_str(), g, &l), DKM_OK);
  EXPECT_EQ(dkm_labels_get(l, 0), 1);
  EXPECT_EQ(dkm_labels_get(l, 5), 2);
  dkm_labels_free(l);
  dkm_graph_free(g);
}

}  // namespace
