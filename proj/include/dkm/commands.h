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

#ifndef DKM_COMMANDS_H_
#define DKM_COMMANDS_H_

#include <iosfwd>
#include <optional>
#include <string_view>

#include "dkm/graph.h"
#include "dkm/run_config.h"

namespace dkm {

// Graph and labels resolved from a RunConfig's data source.
struct LoadedData {
  Graph graph;
  std::optional<LabelSet> labels;
};

// Loads the configured source, applies drop_isolated, and reads the label
// file when given. Warnings go to `diagnostics`.
LoadedData LoadData(const RunConfig& config, std::ostream& diagnostics);

// Each command throws dkm::Error on failure. Result files go to
// config.output (stdout when unset, except for sweep which requires it).
void CmdKernel(const RunConfig& config, std::ostream& diagnostics);
void CmdClassify(const RunConfig& config, std::ostream& diagnostics);
void CmdSweep(const RunConfig& config, std::ostream& diagnostics);
void CmdGenerate(const RunConfig& config, std::ostream& diagnostics);

// Dispatches "kernel", "classify", "sweep" or "generate". Diagnostics go to
// config.diagnostics when set, else to `fallback_diagnostics`.
void RunCommand(std::string_view command, const RunConfig& config,
                std::ostream& fallback_diagnostics);

// Scores CSV: node_id,score,machine,level,beta,cost[,label].
void WriteScoresCsv(std::ostream& out, const Graph& graph,
                    const std::vector<DecisionScores>& score_sets,
                    const std::vector<std::optional<double>>& thresholds);

}  // namespace dkm

#endif  // DKM_COMMANDS_H_
