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

#ifndef EMREKIT_BENCH_HPP_
#define EMREKIT_BENCH_HPP_

#include "emrekit/config.hpp"

namespace emrekit {

struct RunRecord {
  std::string noise_label;
  double noise_p = 0.0;
  std::string method;
  int repetition = 0;
  double E = 0.0;
  double b = 0.0;
  double E_hat = 0.0;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  Branch branch = Branch::None;
  double wall_time_ms = 0.0;  // excluded from the byte-identity contract
};

struct SummaryRow {
  std::string noise_label;
  double noise_p = 0.0;
  std::string method;
  double e_ideal = 0.0;
  double e_noisy = 0.0;
  double mean_E = 0.0;
  double mean_bias = 0.0;
  double std_bias = 0.0;
  double mean_b_reported = 0.0;
  double std_E = 0.0;
  std::int64_t shots = 0;
  int repetitions = 0;
};

struct SweepResult {
  double e_ideal = 0.0;
  std::vector<SummaryRow> summary;
  std::vector<RunRecord> runs;
};

// Full mitigation sweep: every (noise, method) cell is repeated
// cfg.repetitions times with seeds derived as
// RngStream::derive(cfg.seed, {noise_index, method_index, repetition}).
SweepResult run_mitigate_sweep(const ExperimentConfig& cfg, int threads);

// Exact noiseless / noisy expectation per noise point; when cfg.shots is set
// an unmitigated sampled estimate is added per point.
SweepResult run_simulate_sweep(const ExperimentConfig& cfg, int threads);

// File emission. Returns the list of files written.
std::vector<std::string> write_sweep_outputs(const ExperimentConfig& cfg,
                                             const SweepResult& result,
                                             const std::string& out_dir,
                                             bool simulate_layout);

const char* branch_name(Branch b);

}  // namespace emrekit

#endif  // EMREKIT_BENCH_HPP_
