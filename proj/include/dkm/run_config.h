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

#ifndef DKM_RUN_CONFIG_H_
#define DKM_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dkm/eval.h"
#include "dkm/graph.h"
#include "dkm/kernel.h"
#include "dkm/machines.h"

namespace dkm {

struct BlendEntry {
  std::filesystem::path path;
  double weight = 0.0;
};

// Declarative run description. Populated from "key = value" lines (see
// README.md for the key list); later assignments override earlier ones.
struct RunConfig {
  // Exactly one data source.
  std::optional<std::filesystem::path> edge_list;
  std::optional<std::filesystem::path> dense_matrix;
  std::optional<DenseFormat> dense_format;
  std::vector<BlendEntry> blend;
  std::optional<SbmSpec> sbm;
  std::optional<int> n_hint;
  bool drop_isolated = false;

  std::optional<std::filesystem::path> labels;

  std::vector<double> betas;
  std::vector<int> levels;
  std::vector<Machine> machines{Machine::kSimple};
  std::vector<double> cost_grid{kDefaultCostGrid.begin(), kDefaultCostGrid.end()};
  int n_splits = 25;
  double obs_fraction = 0.5;
  Metric metric = Metric::kAuc;
  std::uint64_t master_seed = 0;
  BandwidthDomain bandwidth_domain = BandwidthDomain::kAllNodes;
  int threads = 1;

  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> aggregate_output;
  std::optional<std::filesystem::path> diagnostics;
  bool hard_labels = false;

  std::optional<std::filesystem::path> edges_out;
  std::optional<std::filesystem::path> labels_out;

  // Applies one assignment. Relative paths are resolved against `base_dir`
  // when it is non-empty. Throws a config error for unknown keys or values.
  void Set(std::string_view key, std::string_view value,
           const std::filesystem::path& base_dir = {});

  // Reads "key = value" lines; '#' starts a comment. Relative paths resolve
  // against the file's directory.
  void LoadFile(const std::filesystem::path& path);
  void Parse(std::istream& in, std::string_view source,
             const std::filesystem::path& base_dir = {});

  SweepConfig ToSweepConfig() const;
};

}  // namespace dkm

#endif  // DKM_RUN_CONFIG_H_
