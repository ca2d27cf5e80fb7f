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

// Acceptance suite. Each criterion prints one PASS/FAIL line with the
// measured values; the process exits nonzero if any criterion fails.
// All sampling is seeded, so a rerun reproduces these numbers exactly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "emrekit/bench.hpp"

using namespace emrekit;

namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& name, const std::string& details,
            double seconds) {
  std::printf("[%s] criterion %d: %s  (%s; %.1fs)\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), details.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// ---------------------------------------------------------------------
// 1. Closed-form certification: the primal decomposition upper bound and
//    the dual-certificate lower bound meet the closed forms.
// ---------------------------------------------------------------------
void criterion_closed_form_certification() {
  Timer timer;
  bool pass = true;
  std::string details;
  Gate gate(GateType::H, {0});
  double certified_dephasing = 0;
  for (double p : {0.001, 0.01, 0.05, 0.1}) {
    for (int which = 0; which < 2; ++which) {
      NoiseModel model = which == 0 ? NoiseModel::depolarizing_ddim(p, 2)
                                    : NoiseModel::dephasing(p);
      double closed = closed_form_r_plus(model, 1).r_plus;
      SignedDecomposition dec = emre_decompose(gate, model, EmreMode::ClosedForm);
      double upper = dec.scale - 1.0;
      Matrix beta = canonical_dual_certificate(model, gate);
      CertificateReport cert = dual_certificate_check(model, gate, beta, 1000, 0xC1);
      double lower = cert.certified_lower;
      if (std::abs(upper - closed) > 1e-9 || std::abs(lower - closed) > 1e-9 ||
          !cert.feasible) {
        pass = false;
        details += " mismatch at p=" + fmt(p) + (which == 0 ? " depol" : " deph");
      }
      if (which == 1 && p == 0.1) certified_dephasing = lower;
    }
  }
  details = "dephasing p=0.1 certified R+ = " + fmt(certified_dephasing) +
            " = p/(2-p); depolarizing and dephasing tight at 1e-9" + details;
  report(1, pass, "closed-form certification (depolarizing d=2, dephasing)", details,
         timer.seconds());
}

// ---------------------------------------------------------------------
// 2. Full signed enumeration over quasi-probability terms is unbiased.
// ---------------------------------------------------------------------
void criterion_enumeration_unbiased() {
  Timer timer;
  bool pass = true;
  std::string details = "max |enum - ideal| =";
  RngStream rng(0xC2);
  double worst = 0;
  for (int trial = 0; trial < 3; ++trial) {
    CircuitIR c = random_circuit(2, 4, rng);
    c.noise = NoiseModel::dephasing(0.1);
    CircuitIR ideal = c;
    ideal.noise = NoiseModel::none();
    double target = exact_expectation(ideal);
    double value = pec_enumerate_exact(c);
    worst = std::max(worst, std::abs(value - target));
  }
  pass = worst <= 1e-8;
  details += " " + fmt(worst);
  report(2, pass, "deterministic quasi-probability enumeration is unbiased", details,
         timer.seconds());
}

// ---------------------------------------------------------------------
// 3. Restricted-evolution guarantee: |E - ideal| <= b in >= 99% of runs.
// ---------------------------------------------------------------------
void criterion_bias_guarantee() {
  Timer timer;
  RngStream rng(0xC3);
  const int trials = 200;
  int covered = 0;
  for (int t = 0; t < trials; ++t) {
    CircuitIR c = random_circuit(3, 1 + static_cast<int>(rng.next_double() * 10), rng);
    c.noise = NoiseModel::depolarizing_local(0.0005 + 0.0095 * rng.next_double());
    CircuitIR ideal = c;
    ideal.noise = NoiseModel::none();
    double target = exact_expectation(ideal);
    EstimatorOptions opts;
    opts.method = "emre";
    opts.shots = 2000;
    opts.p_fail = 0.01;
    EstimateReport rep = emre_estimate(c, opts, 0xC30000 + t);
    // 1e-12 absorbs float roundoff when the ideal value sits exactly on the
    // observable bound and the clamped interval touches it.
    if (std::abs(rep.E - target) <= rep.b + 1e-12) ++covered;
  }
  bool pass = covered * 100 >= trials * 99;
  report(3, pass, "bias-interval guarantee on random circuits",
         "covered " + std::to_string(covered) + "/" + std::to_string(trials),
         timer.seconds());
}

// ---------------------------------------------------------------------
// Shared sweep helper for criteria 4, 5 and 7.
// ---------------------------------------------------------------------
ExperimentConfig sweep_config(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.circuit = "swap_test";
  cfg.repetitions = 50;
  cfg.seed = seed;
  cfg.p_fail = 0.01;
  cfg.emit_summary_csv = false;
  cfg.emit_per_run_csv = false;
  cfg.emit_histogram_csv = false;
  cfg.emit_json = false;
  return cfg;
}

MethodEntry method_entry(const std::string& method, ShotMode mode, EmreMode emode,
                         double delta = 0.05) {
  MethodEntry entry;
  entry.options.method = method;
  entry.options.shots = 1000;
  entry.options.p_fail = 0.01;
  entry.options.shot_mode = mode;
  entry.options.emre_mode = emode;
  entry.options.delta_fixed = delta;
  entry.label = method;
  return entry;
}

const SummaryRow& find_row(const SweepResult& result, const std::string& method,
                           const std::string& noise_label) {
  for (const auto& row : result.summary) {
    if (row.method == method && row.noise_label == noise_label) return row;
  }
  throw std::runtime_error("missing summary row " + method + "/" + noise_label);
}

// ---------------------------------------------------------------------
// 4. Desk-scale reproduction bands at p = 0.001.
// ---------------------------------------------------------------------
void criterion_depolarizing_bands() {
  Timer timer;
  ExperimentConfig cfg = sweep_config(0xEA404);
  NoisePoint point;
  point.model = NoiseModel::depolarizing_local(0.001);
  point.label = "p0.001";
  cfg.noise.push_back(point);
  cfg.methods.push_back(
      method_entry("none", ShotMode::ExactTrajectory, EmreMode::PositivePartOfPec));
  cfg.methods.push_back(
      method_entry("pec", ShotMode::SingleShot, EmreMode::PositivePartOfPec));
  cfg.methods.push_back(
      method_entry("emre", ShotMode::SingleShot, EmreMode::PositivePartOfPec));
  cfg.methods.push_back(
      method_entry("hemre", ShotMode::SingleShot, EmreMode::PositivePartOfPec));
  SweepResult result = run_mitigate_sweep(cfg, 0);

  const SummaryRow& none = find_row(result, "none", "p0.001");
  const SummaryRow& pec = find_row(result, "pec", "p0.001");
  const SummaryRow& emre = find_row(result, "emre", "p0.001");
  const SummaryRow& hemre = find_row(result, "hemre", "p0.001");

  bool pass = true;
  auto in_band = [&pass](const SummaryRow& row, double lo, double hi) {
    bool ok = row.mean_bias >= lo && row.mean_bias <= hi;
    if (!ok) pass = false;
    return ok;
  };
  in_band(none, 0.06, 0.11);
  in_band(pec, 0.03, 0.10);
  in_band(emre, 0.015, 0.06);
  in_band(hemre, 0.02, 0.08);
  bool spread_ok = emre.std_E < pec.std_E;
  if (!spread_ok) pass = false;

  std::string details = "mean|bias|: none=" + fmt(none.mean_bias) +
                        " pec=" + fmt(pec.mean_bias) + " emre=" + fmt(emre.mean_bias) +
                        " hemre=" + fmt(hemre.mean_bias) +
                        "; run std: emre=" + fmt(emre.std_E) +
                        " pec=" + fmt(pec.std_E);
  report(4, pass, "swap-test bands at p=0.001 (1000 shots x 50 reps)", details,
         timer.seconds());
}

// ---------------------------------------------------------------------
// 5. Crossover ordering across the probability sweep.
// ---------------------------------------------------------------------
void criterion_crossover() {
  Timer timer;
  ExperimentConfig cfg = sweep_config(0xEA405);
  const std::vector<double> probs = {0.0005, 0.001, 0.005, 0.01};
  for (double p : probs) {
    NoisePoint point;
    point.model = NoiseModel::depolarizing_local(p);
    point.label = "p" + fmt(p);
    cfg.noise.push_back(point);
  }
  cfg.methods.push_back(
      method_entry("pec", ShotMode::SingleShot, EmreMode::PositivePartOfPec));
  cfg.methods.push_back(
      method_entry("emre", ShotMode::ExactTrajectory, EmreMode::PositivePartOfPec));
  SweepResult result = run_mitigate_sweep(cfg, 0);

  // Expected ordering: the restricted estimator beats quasi-probability
  // sampling on the three low-noise rows and loses at p = 0.01.
  int matches = 0;
  std::string details;
  for (size_t i = 0; i < probs.size(); ++i) {
    std::string label = "p" + fmt(probs[i]);
    double e = find_row(result, "emre", label).mean_bias;
    double q = find_row(result, "pec", label).mean_bias;
    bool expect_emre_better = probs[i] < 0.0075;
    bool match = expect_emre_better ? (e < q) : (e > q);
    if (match) ++matches;
    details += label + ": emre=" + fmt(e) + (e < q ? " < " : " > ") +
               "pec=" + fmt(q) + (match ? " (ok) " : " (x) ");
  }
  report(5, matches >= 3, "bias crossover ordering across the sweep",
         details + "matches=" + std::to_string(matches) + "/4", timer.seconds());
}

// ---------------------------------------------------------------------
// 6. Hybrid estimator reductions.
// ---------------------------------------------------------------------
void criterion_hybrid_reductions() {
  Timer timer;
  CircuitIR c;
  c.n_qubits = 2;
  c.observable = PauliString("ZI");
  c.gates.emplace_back(GateType::H, std::vector<int>{0});
  c.gates.emplace_back(GateType::T, std::vector<int>{0});
  c.gates.emplace_back(GateType::CNOT, std::vector<int>{0, 1});
  c.gates.emplace_back(GateType::Tdg, std::vector<int>{1});
  c.noise = NoiseModel::depolarizing_local(0.002);

  EstimatorOptions emre;
  emre.method = "emre";
  emre.shots = 500;
  emre.p_fail = 0.01;
  EstimatorOptions hem_loose = emre;
  hem_loose.method = "hemre";
  hem_loose.delta_fixed = 10.0;  // >= s_total - 1 + eps by a wide margin
  EstimateReport a = emre_estimate(c, emre, 0xC6);
  EstimateReport b = hemre_estimate(c, hem_loose, 0xC6);
  bool identical = a.E == b.E && a.b == b.b && a.E_B == b.E_B &&
                   a.E_hat == b.E_hat && a.shots == b.shots &&
                   a.branch == b.branch && a.epsilon == b.epsilon && a.c == b.c;

  auto infos = decompose_circuit(c, EmreMode::ClosedForm);
  MitigationPlan zero = hemre_select_greedy(c, infos, 0.0, 0.01);
  MitigationPlan pec_plan = plan_uniform(infos, GateMode::FullQuasiProb);
  bool plans_equal = zero.per_gate == pec_plan.per_gate;

  EstimatorOptions pec = emre;
  pec.method = "pec";
  EstimatorOptions hem_zero = hem_loose;
  hem_zero.delta_fixed = 0.0;
  EstimateReport p1 = pec_estimate(c, pec, 0xC6);
  EstimateReport p2 = hemre_estimate(c, hem_zero, 0xC6);
  bool pec_match = p1.E == p2.E;

  bool pass = identical && plans_equal && pec_match;
  std::string details = std::string("loose budget bit-identical: ") +
                        (identical ? "yes" : "no") +
                        "; zero-budget plan equals quasi-probability plan: " +
                        (plans_equal ? "yes" : "no") +
                        "; zero-budget estimate matches: " + (pec_match ? "yes" : "no");
  report(6, pass, "hybrid reductions to the pure estimators", details, timer.seconds());
}

// ---------------------------------------------------------------------
// 7. Inhomogeneous Pauli noise with unmitigated two-qubit gates.
// ---------------------------------------------------------------------
void criterion_inhomogeneous() {
  Timer timer;
  ExperimentConfig cfg = sweep_config(0xEA407);
  NoisePoint point;
  point.model = NoiseModel::inhomogeneous_pauli(0.0002, 0.0004, 0.0004);
  point.model.mitigate_two = false;  // noise applied but not mitigated
  point.label = "inhom0.001";
  cfg.noise.push_back(point);
  cfg.methods.push_back(
      method_entry("pec", ShotMode::SingleShot, EmreMode::PositivePartOfPec));
  cfg.methods.push_back(
      method_entry("emre", ShotMode::SingleShot, EmreMode::PositivePartOfPec));
  SweepResult result = run_mitigate_sweep(cfg, 0);
  const SummaryRow& pec = find_row(result, "pec", "inhom0.001");
  const SummaryRow& emre = find_row(result, "emre", "inhom0.001");
  bool pass = emre.mean_bias < pec.mean_bias;
  report(7, pass, "inhomogeneous Pauli row: restricted beats quasi-probability",
         "mean|bias|: emre=" + fmt(emre.mean_bias) + " pec=" + fmt(pec.mean_bias),
         timer.seconds());
}

// ---------------------------------------------------------------------
// 8. Shot-planner formulas.
// ---------------------------------------------------------------------
void criterion_shot_planners() {
  Timer timer;
  bool pass = plan_shots_pec(1.0, 0.1, 0.05) == 738 &&
              plan_shots_emre(0.1, 0.05) == 738;
  // ln(2/p_fail) = 2 exactly makes the formula integer-valued.
  double pf = 2.0 * std::exp(-2.0);
  pass = pass && plan_shots_hemre(2.0, 3.0, 1.0, pf) == 144;
  pass = pass && plan_shots_hemre(4.0, 3.0, 1.0, pf) == 576;  // s_incl doubled -> 4x
  pass = pass && plan_shots_hemre(2.0, 6.0, 1.0, pf) == 576;  // gamma doubled -> 4x
  pass = pass && plan_shots_hemre(2.0, 3.0, 2.0, pf) == 36;   // epsilon doubled -> /4
  report(8, pass, "shot-planner formulas",
         "pec(1,0.1,0.05)=738, emre(0.1,0.05)=738, hybrid scaling exact",
         timer.seconds());
}

// ---------------------------------------------------------------------
// 9. Post-processing flowchart property suite.
// ---------------------------------------------------------------------
void criterion_flowchart() {
  Timer timer;
  RngStream rng(0xC9);
  bool pass = true;
  int counts[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 100000 && pass; ++i) {
    double eps = 3.0 * rng.next_double();
    double s = 1.0 + 2.0 * rng.next_double();
    double eb = s * (2.0 * rng.next_double() - 1.0);
    PostProcessed out = emre_postprocess(eb, eps, s);
    counts[static_cast<int>(out.branch)]++;
    if (out.b < 0.0 || std::abs(out.E) > 1.0 + 1e-12) pass = false;
    double edge = std::abs(eps + s - 2.0);
    int fired = (eb > edge) + (eb < -edge) +
                (std::abs(eb) <= edge && eps + s >= 2.0) +
                (std::abs(eb) <= edge && eps + s < 2.0);
    if (fired != 1) pass = false;
  }
  double max_jump = 0;
  for (int i = 0; i < 5000; ++i) {
    double eps = 3.0 * rng.next_double();
    double s = 1.0 + 2.0 * rng.next_double();
    double edge = std::abs(eps + s - 2.0);
    for (double sign : {1.0, -1.0}) {
      double lo = emre_postprocess(sign * edge - 1e-12, eps, s).E;
      double hi = emre_postprocess(sign * edge + 1e-12, eps, s).E;
      max_jump = std::max(max_jump, std::abs(hi - lo));
    }
  }
  if (max_jump > 1e-9) pass = false;
  bool all_branches = counts[1] > 0 && counts[2] > 0 && counts[3] > 0 && counts[4] > 0;
  if (!all_branches) pass = false;
  report(9, pass, "flowchart property suite (10^5 triples)",
         "max boundary jump " + fmt(max_jump) + ", all branches exercised",
         timer.seconds());
}

}  // namespace

int main() {
  Timer total;
  std::printf("acceptance suite (threads=%d)\n", resolve_thread_count(0));
  criterion_closed_form_certification();
  criterion_enumeration_unbiased();
  criterion_bias_guarantee();
  criterion_depolarizing_bands();
  criterion_crossover();
  criterion_hybrid_reductions();
  criterion_inhomogeneous();
  criterion_shot_planners();
  criterion_flowchart();
  std::printf("%d of 9 criteria passed (total %.1fs)\n", 9 - g_failures,
              total.seconds());
  return g_failures == 0 ? 0 : 1;
}
