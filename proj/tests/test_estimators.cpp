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

#include <doctest.h>

#include <cmath>

#include "emrekit/estimators.hpp"

using namespace emrekit;

namespace {

CircuitIR toy_circuit(double p) {
  CircuitIR c;
  c.n_qubits = 2;
  c.observable = PauliString("ZI");
  c.gates.emplace_back(GateType::H, std::vector<int>{0});
  c.gates.emplace_back(GateType::T, std::vector<int>{0});
  c.gates.emplace_back(GateType::CNOT, std::vector<int>{0, 1});
  c.gates.emplace_back(GateType::H, std::vector<int>{1});
  c.noise = NoiseModel::depolarizing_local(p);
  return c;
}

bool reports_equal(const EstimateReport& a, const EstimateReport& b) {
  return a.E == b.E && a.b == b.b && a.E_B == b.E_B && a.E_hat == b.E_hat &&
         a.epsilon == b.epsilon && a.c == b.c && a.shots == b.shots &&
         a.branch == b.branch;
}

}  // namespace

TEST_CASE("quasi-probability shot planner") {
  CHECK(plan_shots_pec(1.0, 0.1, 0.05) == 738);
  CHECK(plan_shots_pec(2.0, 0.1, 0.05) == 2952);
  CHECK_THROWS_AS(plan_shots_pec(1.0, 0.1, 2.0), Error);
  CHECK_THROWS_AS(plan_shots_pec(1.0, 0.0, 0.05), Error);
  CHECK_THROWS_AS(plan_shots_pec(0.5, 0.1, 0.05), Error);
}

TEST_CASE("restricted-evolution shot planner is constant in the circuit") {
  CHECK(plan_shots_emre(0.05, 0.01) == 4239);
  CHECK(plan_shots_emre(0.1, 0.05) == 738);
  CHECK_THROWS_AS(plan_shots_emre(0.0, 0.05), Error);
  CHECK_THROWS_AS(plan_shots_emre(1.5, 0.05), Error);
}

TEST_CASE("hybrid shot planner scales with the included overheads") {
  // p_fail = 2 e^-2 makes ln(2 / p_fail) = 2 exactly.
  double pf = 2.0 * std::exp(-2.0);
  CHECK(plan_shots_hemre(2.0, 3.0, 1.0, pf) == 144);
  CHECK(plan_shots_hemre(4.0, 3.0, 1.0, pf) == 576);
  CHECK(plan_shots_hemre(2.0, 6.0, 1.0, pf) == 576);
  CHECK(plan_shots_pec(2.0, 1.0, pf) == 16);
  CHECK(plan_shots_pec(4.0, 1.0, pf) == 64);
}

TEST_CASE("post-processing flowchart on the reference points") {
  PostProcessed trivial = emre_postprocess(0.0, 0.5, 2.0);
  CHECK(trivial.branch == Branch::Trivial);
  CHECK(trivial.E == doctest::Approx(0.0));
  CHECK(trivial.b == doctest::Approx(1.0));

  PostProcessed small = emre_postprocess(0.45, 0.05, 1.2);
  CHECK(small.branch == Branch::SmallS);
  CHECK(small.E == doctest::Approx(0.45));
  CHECK(small.b == doctest::Approx(0.25));

  PostProcessed upper = emre_postprocess(1.5, 0.1, 2.0);
  CHECK(upper.branch == Branch::NonTrivialUpper);
  CHECK(upper.E == doctest::Approx(0.7));
  CHECK(upper.b == doctest::Approx(0.3));

  PostProcessed lower = emre_postprocess(-1.5, 0.1, 2.0);
  CHECK(lower.branch == Branch::NonTrivialLower);
  CHECK(lower.E == doctest::Approx(-0.7));
  CHECK(lower.b == doctest::Approx(0.3));

  CHECK_THROWS_AS(emre_postprocess(0.0, -0.1, 1.0), Error);
  CHECK_THROWS_AS(emre_postprocess(0.0, 0.1, 0.9), Error);
}

TEST_CASE("flowchart scales with the observable norm") {
  // Rescaling (E_B, eps, o_max) by a common factor scales (E, b) with it.
  PostProcessed unit = emre_postprocess(0.45, 0.05, 1.2, 1.0);
  PostProcessed scaled = emre_postprocess(0.9, 0.1, 1.2, 2.0);
  CHECK(scaled.E == doctest::Approx(2.0 * unit.E));
  CHECK(scaled.b == doctest::Approx(2.0 * unit.b));
  CHECK(scaled.branch == unit.branch);
  // Small-scale branch bias is eps + (s - 1) o_max.
  PostProcessed small = emre_postprocess(0.2, 0.1, 1.2, 2.0);
  CHECK(small.branch == Branch::SmallS);
  CHECK(small.b == doctest::Approx(0.1 + 0.2 * 2.0));
}

TEST_CASE("flowchart properties over random triples") {
  RngStream rng(314159);
  int branch_counts[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 100000; ++i) {
    double eps = 3.0 * rng.next_double();
    double s = 1.0 + 2.0 * rng.next_double();
    double ehat = 2.0 * rng.next_double() - 1.0;
    double eb = s * ehat;
    PostProcessed out = emre_postprocess(eb, eps, s);
    CHECK(out.b >= 0.0);
    CHECK(std::abs(out.E) <= 1.0 + 1e-12);
    // Exactly one branch predicate holds.
    double edge = std::abs(eps + s - 2.0);
    int fired = 0;
    if (eb > edge) fired++;
    if (eb < -edge) fired++;
    if (std::abs(eb) <= edge && eps + s >= 2.0) fired++;
    if (std::abs(eb) <= edge && eps + s < 2.0) fired++;
    CHECK(fired == 1);
    branch_counts[static_cast<int>(out.branch)]++;
  }
  // All four branches are exercised.
  CHECK(branch_counts[static_cast<int>(Branch::Trivial)] > 0);
  CHECK(branch_counts[static_cast<int>(Branch::NonTrivialUpper)] > 0);
  CHECK(branch_counts[static_cast<int>(Branch::NonTrivialLower)] > 0);
  CHECK(branch_counts[static_cast<int>(Branch::SmallS)] > 0);
}

TEST_CASE("flowchart is continuous across branch boundaries") {
  RngStream rng(2718);
  const double delta = 1e-12;
  for (int i = 0; i < 2000; ++i) {
    double eps = 3.0 * rng.next_double();
    double s = 1.0 + 2.0 * rng.next_double();
    double edge = std::abs(eps + s - 2.0);
    for (double sign : {1.0, -1.0}) {
      double lo = emre_postprocess(sign * edge - delta, eps, s).E;
      double hi = emre_postprocess(sign * edge + delta, eps, s).E;
      CHECK(std::abs(hi - lo) <= 1e-9);
    }
  }
  // Crossing eps + s = 2 at E_B = 0.
  for (int i = 0; i < 200; ++i) {
    double eps = rng.next_double();
    double lo = emre_postprocess(0.0, eps, 2.0 - eps - delta).E;
    double hi = emre_postprocess(0.0, eps, 2.0 - eps + delta).E;
    CHECK(std::abs(hi - lo) <= 1e-9);
  }
}

TEST_CASE("interval soundness at infinite precision") {
  RngStream rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    CircuitIR c = random_circuit(3, 8, rng);
    double p = 0.05 * rng.next_double();
    c.noise = (trial % 2 == 0) ? NoiseModel::depolarizing_local(p)
                               : NoiseModel::dephasing(p);
    CircuitIR ideal = c;
    ideal.noise = NoiseModel::none();
    double target = exact_expectation(ideal);
    double noisy = exact_expectation(c);

    auto infos = decompose_circuit(c, EmreMode::ClosedForm);
    double s_total = 1.0;
    for (const auto& i : infos)
      if (i.mitigable) s_total *= i.s;
    PostProcessed out = emre_postprocess(s_total * noisy, 0.0, s_total);
    CHECK(std::abs(out.E - target) <= out.b + 1e-9);
  }
}

TEST_CASE("greedy selection follows the worked example") {
  GreedySelection sel =
      greedy_class_selection({{"G1", 3, 1.01}, {"G2", 2, 1.05}}, 1.06);
  CHECK_FALSE(sel.infeasible);
  CHECK(sel.s_incl == doctest::Approx(1.01 * 1.01 * 1.01).epsilon(1e-12));
  REQUIRE(sel.approved.size() == 1);
  CHECK(sel.approved[0].first == "G1");
  CHECK(sel.approved[0].second == 3);
}

TEST_CASE("greedy selection approves everything under a loose budget") {
  GreedySelection sel =
      greedy_class_selection({{"A", 2, 1.1}, {"B", 1, 1.2}}, 10.0);
  CHECK(sel.s_incl == doctest::Approx(1.1 * 1.1 * 1.2).epsilon(1e-12));
  CHECK(sel.approved.size() == 2);
}

TEST_CASE("greedy selection with an infeasible budget approves nothing") {
  GreedySelection sel = greedy_class_selection({{"A", 2, 1.1}}, 0.99);
  CHECK(sel.infeasible);
  CHECK(sel.approved.empty());
  CHECK(sel.s_incl == doctest::Approx(1.0));
}

TEST_CASE("unit-scale classes are approved before the loop") {
  GreedySelection sel =
      greedy_class_selection({{"B", 1, 1.5}, {"A", 5, 1.0}}, 1.2);
  REQUIRE(sel.approved.size() == 1);
  CHECK(sel.approved[0].first == "A");
  CHECK(sel.approved[0].second == 5);
  CHECK(sel.s_incl == doctest::Approx(1.0));
}

TEST_CASE("greedy selection never exceeds the budget") {
  RngStream rng(808);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ClassRow> rows;
    int n = 1 + static_cast<int>(rng.next_double() * 5);
    for (int i = 0; i < n; ++i) {
      rows.push_back({"C" + std::to_string(i),
                      1 + static_cast<int>(rng.next_double() * 4),
                      1.0 + 0.2 * rng.next_double()});
    }
    double budget = 1.0 + rng.next_double();
    GreedySelection sel = greedy_class_selection(rows, budget);
    CHECK(sel.s_incl <= budget * (1.0 + 1e-12));
  }
}

TEST_CASE("window scan covers the whole list when every scale is one") {
  WindowSelection sel = window_scan_selection({{1.0, 1.4}, {1.0, 1.2}, {1.0, 1.6}}, 1.0);
  CHECK(sel.begin == 0);
  CHECK(sel.end == 3);
  CHECK(sel.tot_overhead == doctest::Approx(1.0));
}

TEST_CASE("window scan on a single gate follows the worked example") {
  WindowSelection sel = window_scan_selection({{1.2, 1.5}}, 1.3);
  CHECK(sel.begin == 0);
  CHECK(sel.end == 1);
  CHECK(sel.s_incl == doctest::Approx(1.2));
  CHECK(sel.tot_overhead == doctest::Approx(1.2));
}

TEST_CASE("window scan matches exhaustive search over contiguous windows") {
  RngStream rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 4;
    std::vector<std::pair<double, double>> sg;
    for (int i = 0; i < n; ++i) {
      double s = 1.0 + 0.5 * rng.next_double();
      double g = s + 0.5 * rng.next_double();
      sg.emplace_back(s, g);
    }
    std::sort(sg.begin(), sg.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double budget = 1.0 + 1.5 * rng.next_double();

    double gamma_all = 1.0;
    for (const auto& [s, g] : sg) gamma_all *= g;
    double best = gamma_all;
    for (int b = 0; b < n; ++b) {
      double s_incl = 1.0, gw = 1.0;
      for (int e = b; e < n; ++e) {
        s_incl *= sg[static_cast<size_t>(e)].first;
        gw *= sg[static_cast<size_t>(e)].second;
        if (s_incl > budget) break;
        best = std::min(best, s_incl * gamma_all / gw);
      }
    }
    WindowSelection sel = window_scan_selection(sg, budget);
    CHECK(sel.tot_overhead == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("hybrid plan reduces to all-approximate under a loose budget") {
  CircuitIR c = toy_circuit(0.002);
  auto infos = decompose_circuit(c, EmreMode::ClosedForm);
  MitigationPlan plan = hemre_select_greedy(c, infos, 10.0, 0.01);
  for (GateMode m : plan.per_gate) CHECK(m == GateMode::Approximate);
  CHECK(plan.s_incl == doctest::Approx(plan.s_total));
  CHECK(plan.gamma_incl == doctest::Approx(1.0));
}

TEST_CASE("hybrid plan reduces to all-quasi-probability at zero budget") {
  CircuitIR c = toy_circuit(0.002);
  auto infos = decompose_circuit(c, EmreMode::ClosedForm);
  MitigationPlan plan = hemre_select_greedy(c, infos, 0.0, 0.01);
  CHECK(plan.infeasible_bias);
  MitigationPlan pec = plan_uniform(infos, GateMode::FullQuasiProb);
  CHECK(plan.per_gate == pec.per_gate);
  CHECK(plan.s_incl == doctest::Approx(1.0));
}

TEST_CASE("hybrid estimate is bit-identical to the restricted estimator when the budget is loose") {
  CircuitIR c = toy_circuit(0.002);
  EstimatorOptions emre;
  emre.method = "emre";
  emre.shots = 400;
  emre.p_fail = 0.01;
  EstimatorOptions hemre = emre;
  hemre.method = "hemre";
  hemre.delta_fixed = 10.0;
  EstimateReport a = emre_estimate(c, emre, 991);
  EstimateReport b = hemre_estimate(c, hemre, 991);
  CHECK(reports_equal(a, b));
  CHECK(b.s_incl == doctest::Approx(b.s_total));
}

TEST_CASE("hybrid estimate matches the quasi-probability estimator at zero budget") {
  CircuitIR c = toy_circuit(0.002);
  EstimatorOptions pec;
  pec.method = "pec";
  pec.shots = 400;
  pec.p_fail = 0.01;
  EstimatorOptions hemre = pec;
  hemre.method = "hemre";
  hemre.delta_fixed = 0.0;
  EstimateReport a = pec_estimate(c, pec, 991);
  EstimateReport b = hemre_estimate(c, hemre, 991);
  CHECK(a.E == b.E);
  CHECK(b.branch == Branch::SmallS);
  CHECK(b.s_incl == doctest::Approx(1.0));
  CHECK(b.b == doctest::Approx(b.epsilon));
  CHECK(a.b == doctest::Approx(b.b).epsilon(1e-12));
}

TEST_CASE("full enumeration over decomposition terms is unbiased") {
  CircuitIR c = toy_circuit(0.0);
  c.noise = NoiseModel::dephasing(0.1);
  CircuitIR ideal = c;
  ideal.noise = NoiseModel::none();
  double target = exact_expectation(ideal);
  CHECK(std::abs(pec_enumerate_exact(c) - target) < 1e-8);
}

TEST_CASE("noiseless restricted estimate lands in the small-scale branch") {
  CircuitIR c = toy_circuit(0.0);
  EstimatorOptions opts;
  opts.method = "emre";
  opts.shots = 500;
  opts.p_fail = 0.01;
  EstimateReport rep = emre_estimate(c, opts, 17);
  CHECK(rep.branch == Branch::SmallS);
  CHECK(rep.s_total == doctest::Approx(1.0));
  CHECK(rep.E == doctest::Approx(rep.E_hat));
  CHECK(rep.b == doctest::Approx(rep.c));
}

TEST_CASE("noiseless quasi-probability estimate is exact up to shot noise") {
  CircuitIR c = toy_circuit(0.0);
  CircuitIR ideal = c;
  ideal.noise = NoiseModel::none();
  double target = exact_expectation(ideal);
  EstimatorOptions opts;
  opts.method = "pec";
  opts.shots = 4000;
  EstimateReport rep = pec_estimate(c, opts, 99);
  CHECK(rep.gamma_incl == doctest::Approx(1.0));
  CHECK(std::abs(rep.E - target) <= 4.0 / std::sqrt(4000.0));
}

TEST_CASE("estimator reports are reproducible for a fixed seed") {
  CircuitIR c = toy_circuit(0.005);
  EstimatorOptions opts;
  opts.method = "hemre";
  opts.shots = 300;
  opts.delta_fixed = 0.05;
  EstimateReport a = run_estimator(c, opts, 777);
  EstimateReport b = run_estimator(c, opts, 777);
  CHECK(reports_equal(a, b));
  CHECK_THROWS_AS(run_estimator(c, EstimatorOptions{.method = "magic"}, 1), Error);
}

TEST_CASE("coverage of the restricted estimator bias interval") {
  RngStream rng(10101);
  int covered = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    CircuitIR c = random_circuit(3, 10, rng);
    c.noise = NoiseModel::depolarizing_local(0.0005 + 0.0095 * rng.next_double());
    CircuitIR ideal = c;
    ideal.noise = NoiseModel::none();
    double target = exact_expectation(ideal);
    EstimatorOptions opts;
    opts.method = "emre";
    opts.shots = 1000;
    opts.p_fail = 0.01;
    EstimateReport rep = emre_estimate(c, opts, 33000 + t);
    // When the ideal value sits exactly on the observable bound the clamped
    // interval touches it, so allow float roundoff in the comparison.
    if (std::abs(rep.E - target) <= rep.b + 1e-12) ++covered;
  }
  CHECK(covered >= trials - 1);
}

TEST_CASE("term steps reproduce the joint term channels") {
  // The sampler executes each term as a step sequence (unitary then
  // per-qubit correction-and-noise); the product must equal the term's
  // joint channel.
  for (const Gate& g : {Gate(GateType::T, {0}), Gate(GateType::CNOT, {1, 0})}) {
    CircuitIR c;
    c.n_qubits = 2;
    c.observable = PauliString("ZI");
    c.gates.push_back(g);
    c.noise = NoiseModel::inhomogeneous_pauli(0.01, 0.02, 0.03);
    SignedDecomposition dec = pec_decompose_pauli(g, c.noise);
    RngStream rng(64);
    for (const auto& term : dec.terms) {
      auto steps = gate_term_steps(g, c.noise, term.pauli_label);
      for (int trial = 0; trial < 3; ++trial) {
        // Random product state via a few unitaries.
        DensityMatrix a(2, 0);
        Matrix u0 = random_unitary(2, rng);
        Matrix u1 = random_unitary(2, rng);
        a.apply_local_superop(superop_from_kraus({u0}), {0});
        a.apply_local_superop(superop_from_kraus({u1}), {1});
        DensityMatrix b = a;
        for (const auto& step : steps) a.apply_local_superop(step.superop, step.qubits);
        b.apply_local_superop(superop_from_kraus(term.channel), g.qubits);
        double diff = 0;
        for (size_t i = 0; i < a.data().size(); ++i)
          diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
        CHECK(diff < 1e-12);
      }
    }
  }
}

TEST_CASE("window selector drives the hybrid estimator end to end") {
  CircuitIR c = toy_circuit(0.004);
  EstimatorOptions opts;
  opts.method = "hemre";
  opts.shots = 300;
  opts.selector = Selector::Window;
  opts.delta_fixed = 0.02;
  EstimateReport rep = hemre_estimate(c, opts, 551);
  CHECK(rep.s_incl >= 1.0);
  CHECK(rep.s_incl <= rep.s_total + 1e-12);
  // The selected product respects the bias budget.
  CHECK(rep.s_incl <= opts.delta_fixed + 1.0 - 0.0 + 1e-9);

  // A loose budget approximates everything, matching the greedy plan.
  auto infos = decompose_circuit(c, EmreMode::ClosedForm);
  MitigationPlan w = hemre_select_window(c, infos, 10.0, 0.01);
  MitigationPlan g = hemre_select_greedy(c, infos, 10.0, 0.01);
  CHECK(w.per_gate == g.per_gate);
  CHECK(w.s_incl == doctest::Approx(w.s_total));
}
