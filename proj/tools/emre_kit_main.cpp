// Copyright 2026 The emre-kit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end; talks to the core exclusively through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "emrekit/emrekit_c.h"

namespace {

int exit_code_for(emk_status status) {
  switch (status) {
    case EMK_OK:
      return 0;
    case EMK_ERR_PARSE:
      return 2;
    case EMK_ERR_UNSUPPORTED_NOISE:
      return 3;
    default:
      return 1;
  }
}

int report_failure(emk_status status) {
  std::cerr << "error (" << emk_status_name(status) << "): " << emk_last_error()
            << std::endl;
  return exit_code_for(status);
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in.good()) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"emre-kit: noisy-circuit simulation and error-mitigated estimation"};
  app.require_subcommand(1);

  std::int64_t seed_override = -1;
  int threads = 0;
  std::string out_dir;
  app.add_option("--seed", seed_override, "Master seed override");
  app.add_option("--threads", threads,
                 "Worker threads (default: EMREKIT_THREADS or all cores)");
  app.add_option("--out-dir", out_dir, "Output directory override");

  std::string sim_config, mit_config;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Exact noiseless/noisy expectations (plus unmitigated sampling)");
  simulate->fallthrough();
  simulate->add_option("config", sim_config, "Config file (TOML or JSON)")
      ->required();
  CLI::App* mitigate = app.add_subcommand(
      "mitigate", "Run the configured mitigation sweep and emit CSV/JSON");
  mitigate->fallthrough();
  mitigate->add_option("config", mit_config, "Config file (TOML or JSON)")
      ->required();

  std::string noise_spec, gate_name = "I";
  bool as_json = false;
  CLI::App* robustness = app.add_subcommand(
      "robustness", "Closed-form robustness, bounds and certificate for a gate");
  robustness->fallthrough();
  robustness->add_option("--noise", noise_spec,
                         "Noise spec, e.g. dephasing:0.1 or "
                         "depolarizing_ddim:p=0.01,d=2")
      ->required();
  robustness->add_option("--gate", gate_name, "Gate name (default I)");
  robustness->add_flag("--json", as_json, "Emit JSON instead of text");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed() || mitigate->parsed()) {
    const std::string& path = simulate->parsed() ? sim_config : mit_config;
    std::string text;
    if (!read_file(path, text)) {
      std::cerr << "error (io_error): cannot open config file '" << path << "'"
                << std::endl;
      return 2;
    }
    char* message = nullptr;
    emk_status status =
        simulate->parsed()
            ? emk_run_simulate(text.c_str(), out_dir.c_str(), seed_override,
                               threads, &message)
            : emk_run_mitigate(text.c_str(), out_dir.c_str(), seed_override,
                               threads, &message);
    if (status != EMK_OK) return report_failure(status);
    std::cout << message;
    emk_string_free(message);
    return 0;
  }

  if (robustness->parsed()) {
    char* text = nullptr;
    emk_status status = emk_robustness_report_text(
        noise_spec.c_str(), gate_name.c_str(), as_json ? 1 : 0, &text);
    if (status != EMK_OK) return report_failure(status);
    std::cout << text;
    emk_string_free(text);
    return 0;
  }
  return 0;
}
