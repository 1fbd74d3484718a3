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

#include "dkm/run_config.h"

#include <fstream>
#include <istream>

#include "dkm/error.h"
#include "text_format.h"

namespace dkm {
namespace {

std::string Key(std::string_view key) { return "'" + std::string(key) + "'"; }

double RequireDouble(std::string_view key, std::string_view value) {
  const auto v = text::ParseDouble(value);
  if (!v) ThrowConfigError(Key(key) + ": expected a number, got '" + std::string(value) + "'");
  return *v;
}

std::int64_t RequireInt(std::string_view key, std::string_view value) {
  const auto v = text::ParseInt(value);
  if (!v) ThrowConfigError(Key(key) + ": expected an integer, got '" + std::string(value) + "'");
  return *v;
}

bool RequireBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  ThrowConfigError(Key(key) + ": expected true or false, got '" + std::string(value) + "'");
}

std::vector<std::string_view> ListItems(std::string_view value) {
  std::vector<std::string_view> out;
  if (text::Trim(value).empty()) return out;
  for (auto item : text::Split(value, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::filesystem::path ResolvePath(std::string_view value,
                                  const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p;
}

}  // namespace

void RunConfig::Set(std::string_view raw_key, std::string_view raw_value,
                    const std::filesystem::path& base_dir) {
  const std::string_view key = text::Trim(raw_key);
  const std::string_view value = text::Trim(raw_value);
  const auto path = [&] { return ResolvePath(value, base_dir); };
  const auto sbm_spec = [&]() -> SbmSpec& {
    if (!sbm) sbm = SbmSpec{};
    return *sbm;
  };

  if (key == "edge_list") {
    edge_list = path();
  } else if (key == "dense_matrix") {
    dense_matrix = path();
  } else if (key == "dense_format") {
    if (value == "csv") {
      dense_format = DenseFormat::kCsv;
    } else if (value == "tsv") {
      dense_format = DenseFormat::kTsv;
    } else {
      ThrowConfigError(Key(key) + ": expected csv or tsv");
    }
  } else if (key == "blend") {
    blend.clear();
    for (auto item : ListItems(value)) {
      const auto colon = item.rfind(':');
      if (colon == std::string_view::npos) {
        ThrowConfigError(Key(key) + ": entries look like path:weight");
      }
      blend.push_back({ResolvePath(text::Trim(item.substr(0, colon)), base_dir),
                       RequireDouble(key, item.substr(colon + 1))});
    }
  } else if (key == "sbm_sizes") {
    const auto items = ListItems(value);
    if (items.size() != 2) ThrowConfigError(Key(key) + ": expected two block sizes");
    for (int b = 0; b < 2; ++b) {
      sbm_spec().sizes[b] = static_cast<int>(RequireInt(key, items[b]));
    }
  } else if (key == "sbm_p_in") {
    sbm_spec().p_in = RequireDouble(key, value);
  } else if (key == "sbm_p_out") {
    sbm_spec().p_out = RequireDouble(key, value);
  } else if (key == "sbm_seed") {
    sbm_spec().seed = static_cast<std::uint64_t>(RequireInt(key, value));
  } else if (key == "n_hint") {
    n_hint = static_cast<int>(RequireInt(key, value));
  } else if (key == "drop_isolated") {
    drop_isolated = RequireBool(key, value);
  } else if (key == "labels") {
    labels = path();
  } else if (key == "beta_grid" || key == "beta") {
    betas.clear();
    for (auto item : ListItems(value)) betas.push_back(RequireDouble(key, item));
  } else if (key == "levels" || key == "level") {
    levels.clear();
    for (auto item : ListItems(value)) levels.push_back(static_cast<int>(RequireInt(key, item)));
  } else if (key == "machines" || key == "machine") {
    machines.clear();
    for (auto item : ListItems(value)) {
      const auto m = ParseMachine(item);
      if (!m) ThrowConfigError(Key(key) + ": unknown machine '" + std::string(item) + "'");
      machines.push_back(*m);
    }
  } else if (key == "cost_grid") {
    cost_grid.clear();
    for (auto item : ListItems(value)) cost_grid.push_back(RequireDouble(key, item));
  } else if (key == "n_splits") {
    n_splits = static_cast<int>(RequireInt(key, value));
  } else if (key == "obs_fraction") {
    obs_fraction = RequireDouble(key, value);
  } else if (key == "metric") {
    const auto m = ParseMetric(value);
    if (!m) ThrowConfigError(Key(key) + ": expected AP or AUC");
    metric = *m;
  } else if (key == "master_seed") {
    master_seed = static_cast<std::uint64_t>(RequireInt(key, value));
  } else if (key == "bandwidth_domain") {
    if (value == "all_nodes") {
      bandwidth_domain = BandwidthDomain::kAllNodes;
    } else if (value == "obs_only") {
      bandwidth_domain = BandwidthDomain::kObservedOnly;
    } else {
      ThrowConfigError(Key(key) + ": expected all_nodes or obs_only");
    }
  } else if (key == "threads") {
    threads = static_cast<int>(RequireInt(key, value));
  } else if (key == "output") {
    output = path();
  } else if (key == "aggregate_output") {
    aggregate_output = path();
  } else if (key == "diagnostics") {
    diagnostics = path();
  } else if (key == "hard_labels") {
    hard_labels = RequireBool(key, value);
  } else if (key == "edges_out") {
    edges_out = path();
  } else if (key == "labels_out") {
    labels_out = path();
  } else {
    ThrowConfigError("unknown config key " + Key(key));
  }
}

void RunConfig::Parse(std::istream& in, std::string_view source,
                      const std::filesystem::path& base_dir) {
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    const std::string_view trimmed = text::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string_view::npos) {
      ThrowConfigError(std::string(source) + ":" + std::to_string(line_no) +
                       ": expected 'key = value'");
    }
    try {
      Set(trimmed.substr(0, eq), trimmed.substr(eq + 1), base_dir);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(source) + ":" + std::to_string(line_no) + ": " +
                                e.what());
    }
  }
}

void RunConfig::LoadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowConfigError("cannot open config file '" + path.string() + "'");
  Parse(in, path.string(), path.parent_path());
}

SweepConfig RunConfig::ToSweepConfig() const {
  SweepConfig out;
  out.betas = betas;
  out.levels = levels;
  out.machines = machines;
  out.cost_grid = cost_grid;
  out.n_splits = n_splits;
  out.obs_fraction = obs_fraction;
  out.metric = metric;
  out.master_seed = master_seed;
  out.bandwidth_domain = bandwidth_domain;
  out.threads = threads;
  return out;
}

}  // namespace dkm
