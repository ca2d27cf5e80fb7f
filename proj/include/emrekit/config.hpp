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

#ifndef EMREKIT_CONFIG_HPP_
#define EMREKIT_CONFIG_HPP_

#include <string>

#include <json.hpp>

#include "emrekit/estimators.hpp"

namespace emrekit {

// Minimal TOML reader covering the configuration dialect: top-level and
// [table] keys, [[array-of-table]] sections, strings, numbers, booleans and
// flat arrays. Produces the same JSON document the JSON path accepts.
nlohmann::json toml_to_json(const std::string& text);

// Accepts either JSON (first significant character '{') or TOML.
nlohmann::json parse_config_text(const std::string& text);

// Noise model from a JSON object:
// { "kind": "depolarizing_local", "p": 0.001,
//   "attachment": "after_every_gate_local",
//   "noisy_gate_classes": ["single", "two"],
//   "mitigated_gate_classes": ["single", "two"] }
NoiseModel noise_from_json(const nlohmann::json& j);

// Compact command-line form, e.g. "dephasing:0.1", "depolarizing_ddim:p=0.01,d=2",
// "inhomogeneous_pauli:0.0002,0.0004,0.0004".
NoiseModel noise_from_spec(const std::string& spec);

// Estimator options from a JSON object:
// { "method": "emre", "shots": 1000, "c": 0.05, "p_fail": 0.01,
//   "delta_fixed": 0.05, "selector": "greedy",
//   "shot_mode": "single_shot", "emre_mode": "closed_form" }
EstimatorOptions estimator_from_json(const nlohmann::json& j);

struct NoisePoint {
  NoiseModel model;
  std::string label;
};

struct MethodEntry {
  EstimatorOptions options;
  std::string label;
};

struct ExperimentConfig {
  int spec_version = 1;
  std::string circuit = "swap_test";      // builtin name or path to JSON
  std::string output = "out";
  int repetitions = 1;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> shots;      // shot budget for `simulate`
  double p_fail = 0.01;
  bool emit_summary_csv = true;
  bool emit_per_run_csv = true;
  bool emit_histogram_csv = false;
  bool emit_json = true;
  std::vector<NoisePoint> noise;
  std::vector<MethodEntry> methods;
};

ExperimentConfig experiment_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& text);

// Loads the circuit named by the config (builtin "swap_test",
// "swap_test_ghz_ghz", or a path to the JSON interchange format).
CircuitIR load_circuit(const std::string& name_or_path);

}  // namespace emrekit

#endif  // EMREKIT_CONFIG_HPP_
