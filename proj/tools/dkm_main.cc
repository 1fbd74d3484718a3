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

// dkm: command-line front end over the C API.
//
//   dkm <kernel|classify|sweep|generate> [--config FILE] [--set key=value]...
//       [--threads N] [--output PATH]
//
// Flag overrides are applied after the config file, in order.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dkm/dkm.h"

namespace {

int Report(dkm_status status) {
  std::fprintf(stderr, "dkm: %s: %s\n", dkm_status_string(status), dkm_last_error());
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deep kernel machines for binary node classification"};
  app.set_version_flag("--version", std::string(dkm_version()));

  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string threads;
  std::string output;

  app.add_option("command", command, "kernel, classify, sweep or generate")
      ->required()
      ->check(CLI::IsMember({"kernel", "classify", "sweep", "generate"}));
  app.add_option("-c,--config", config_path, "key = value config file");
  app.add_option("-s,--set", overrides, "override a config key (key=value)")
      ->allow_extra_args(false);
  app.add_option("-j,--threads", threads, "worker threads for sweep");
  app.add_option("-o,--output", output, "result file (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : DKM_ERR_CONFIG;
  }

  dkm_config* config = nullptr;
  dkm_status status = dkm_config_create(&config);
  if (status != DKM_OK) return Report(status);

  bool reported = false;
  auto run = [&]() -> dkm_status {
    dkm_status s = DKM_OK;
    if (!config_path.empty()) {
      if ((s = dkm_config_load_file(config, config_path.c_str())) != DKM_OK) return s;
    }
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "dkm: config error: --set expects key=value, got '%s'\n",
                     kv.c_str());
        reported = true;
        return DKM_ERR_CONFIG;
      }
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      if ((s = dkm_config_set(config, key.c_str(), value.c_str())) != DKM_OK) return s;
    }
    if (!threads.empty() && (s = dkm_config_set(config, "threads", threads.c_str())) != DKM_OK) {
      return s;
    }
    if (!output.empty() && (s = dkm_config_set(config, "output", output.c_str())) != DKM_OK) {
      return s;
    }
    return dkm_run_command(config, command.c_str());
  };

  status = run();
  dkm_config_free(config);
  if (status == DKM_OK) return 0;
  return reported ? status : Report(status);
}
