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

#ifndef EMREKIT_ESTIMATORS_HPP_
#define EMREKIT_ESTIMATORS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "emrekit/robustness.hpp"
#include "emrekit/simulator.hpp"

namespace emrekit {

// ---------------------------------------------------------------------------
// Shot planners (Hoeffding)
// ---------------------------------------------------------------------------

// ceil(2 gamma^2 / precision^2 * ln(2 / p_fail)); grows with the circuit's
// quasi-probability overhead.
std::int64_t plan_shots_pec(double gamma, double precision, double p_fail);

// ceil(2 / c^2 * ln(2 / p_fail)); independent of circuit and noise.
std::int64_t plan_shots_emre(double c, double p_fail);

// ceil(2 s_incl^2 gamma_incl^2 / epsilon^2 * ln(2 / p_fail)).
std::int64_t plan_shots_hemre(double s_incl, double gamma_incl, double epsilon,
                              double p_fail);

// ---------------------------------------------------------------------------
// Post-processing flowchart
// ---------------------------------------------------------------------------

enum class Branch { None, Trivial, NonTrivialUpper, NonTrivialLower, SmallS };

struct PostProcessed {
  double E = 0.0;
  double b = 0.0;
  Branch branch = Branch::None;
};

// Turns the scaled raw mean E_B (= s * mean outcome) into the final estimate
// and its bias bound. With eb = E_B/o_max and et = epsilon/o_max:
//   et + s >= 2, |eb| <= et + s - 2          ->  E = 0,               b = o_max
//   eb > |et + s - 2|                        ->  E = (eb-et-s+2)/2,   b = (et+s-eb)/2
//   eb < -|et + s - 2|                       ->  E = (eb+et+s-2)/2,   b = (et+s+eb)/2
//   et + s < 2, |eb| <= 2 - et - s           ->  E = eb,              b = et+s-1
// (E and b scaled back by o_max.) The clamping branches apply whenever the
// interval [E_B - eps - (s-1) o_max, E_B + eps + (s-1) o_max] pokes out of
// [-o_max, o_max]; this keeps |E| <= o_max, b >= 0, and E continuous across
// every branch boundary.
PostProcessed emre_postprocess(double E_B, double epsilon, double s,
                               double o_max = 1.0);

// ---------------------------------------------------------------------------
// Mitigation plans
// ---------------------------------------------------------------------------

enum class GateMode { Approximate, FullQuasiProb, Unmitigated };
enum class Selector { Greedy, Window };

// Per-gate decompositions of a circuit under its noise model. Gates whose
// class is excluded from mitigation stay Unmitigated with s = gamma = 1.
struct GateDecompInfo {
  bool mitigable = false;
  double s = 1.0;
  double gamma = 1.0;
  std::optional<SignedDecomposition> pec;
  std::optional<SignedDecomposition> emre;
};

std::vector<GateDecompInfo> decompose_circuit(const CircuitIR& circuit,
                                              EmreMode emre_mode);

struct MitigationPlan {
  std::vector<GateMode> per_gate;
  double s_incl = 1.0;
  double gamma_incl = 1.0;
  double s_total = 1.0;
  bool infeasible_bias = false;  // bias budget admitted no approximation
};

// Uniform plans.
MitigationPlan plan_uniform(const std::vector<GateDecompInfo>& infos, GateMode mode);

// Greedy class selection: classes sorted by ascending s (stable name
// tie-break); classes with s = 1 are approximated up front; whole classes are
// absorbed while s_incl * s^frequency <= budget, then
// m = floor(log(budget / s_incl) / log(s)) instances of the violating class.
struct ClassRow {
  std::string name;
  int frequency = 0;
  double s = 1.0;
};
struct GreedySelection {
  std::vector<std::pair<std::string, int>> approved;  // class -> count
  double s_incl = 1.0;
  bool infeasible = false;
};
GreedySelection greedy_class_selection(std::vector<ClassRow> rows, double budget);

// Window scan: gates sorted by descending s; every maximal contiguous window
// with product(s) <= budget is scored by
//   overhead = prod(s in window) * prod(gamma outside window)
// and the minimum wins (ties: earliest start). Equivalent to exhaustive
// search over feasible contiguous windows.
struct WindowSelection {
  int begin = 0, end = 0;  // [begin, end) in the sorted order
  double s_incl = 1.0;
  double tot_overhead = 1.0;
  bool infeasible = false;
};
WindowSelection window_scan_selection(const std::vector<std::pair<double, double>>& s_gamma,
                                      double budget);

// Plan builders. `epsilon` enters the bias budget  s_incl <= delta + 1 - eps.
MitigationPlan hemre_select_greedy(const CircuitIR& circuit,
                                   const std::vector<GateDecompInfo>& infos,
                                   double delta_fixed, double epsilon);
MitigationPlan hemre_select_window(const CircuitIR& circuit,
                                   const std::vector<GateDecompInfo>& infos,
                                   double delta_fixed, double epsilon);

// Executable form of a plan for the trajectory sampler.
CompiledPlan compile_plan(const CircuitIR& circuit,
                          const std::vector<GateDecompInfo>& infos,
                          const MitigationPlan& plan);

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

struct EstimateReport {
  std::string method;
  double E = 0.0;       // final estimate
  double b = 0.0;       // bias bound (statistical half-width for pec/none)
  double E_B = 0.0;     // s_incl * E_hat
  double E_hat = 0.0;   // raw mean of weight * sign * outcome
  double epsilon = 0.0;
  double c = 0.0;
  double p_fail = 0.0;
  std::int64_t shots = 0;
  Branch branch = Branch::None;
  std::uint64_t seed = 0;
  double s_total = 1.0;
  double s_incl = 1.0;
  double gamma_incl = 1.0;
  double std_error = 0.0;
  bool infeasible_bias = false;
};

struct EstimatorOptions {
  std::string method = "emre";  // none | pec | emre | hemre
  std::optional<std::int64_t> shots;  // fixed budget; otherwise planned
  std::optional<double> c;            // EMRE precision constant
  double precision = 0.1;             // PEC Monte Carlo precision target
  double p_fail = 0.01;
  double delta_fixed = 0.05;
  Selector selector = Selector::Greedy;
  ShotMode shot_mode = ShotMode::SingleShot;
  EmreMode emre_mode = EmreMode::ClosedForm;
  bool hemre_epsilon_on_s_incl = false;  // epsilon base s_total (default) or s_incl
  int threads = 0;
};

EstimateReport unmitigated_estimate(const CircuitIR& circuit,
                                    const EstimatorOptions& opts, std::uint64_t seed);
EstimateReport pec_estimate(const CircuitIR& circuit, const EstimatorOptions& opts,
                            std::uint64_t seed);
EstimateReport emre_estimate(const CircuitIR& circuit, const EstimatorOptions& opts,
                             std::uint64_t seed);
EstimateReport hemre_estimate(const CircuitIR& circuit, const EstimatorOptions& opts,
                              std::uint64_t seed);
// Dispatch on opts.method.
EstimateReport run_estimator(const CircuitIR& circuit, const EstimatorOptions& opts,
                             std::uint64_t seed);

// Deterministic signed enumeration over every combination of
// quasi-probability terms; equals the noiseless expectation for any valid
// decomposition set. Guarded by a combination cap.
double pec_enumerate_exact(const CircuitIR& circuit,
                           std::int64_t max_combinations = 1 << 20);

}  // namespace emrekit

#endif  // EMREKIT_ESTIMATORS_HPP_
