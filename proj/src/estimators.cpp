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

#include "emrekit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace emrekit {

namespace {

double hoeffding_factor(double p_fail) {
  require(p_fail > 0.0 && p_fail < 1.0, ErrorCode::InvalidArgument,
          "p_fail must lie in (0, 1)");
  return std::log(2.0 / p_fail);
}

std::int64_t ceil_to_int64(double x) {
  require(x < 9.2e18, ErrorCode::InvalidArgument, "shot count overflows");
  return static_cast<std::int64_t>(std::ceil(x - 1e-12));
}

// Backed-out precision constant for a fixed shot budget.
double c_from_shots(std::int64_t shots, double p_fail) {
  require(shots >= 1, ErrorCode::InvalidArgument, "shots must be >= 1");
  return std::sqrt(2.0 * hoeffding_factor(p_fail) / static_cast<double>(shots));
}

}  // namespace

std::int64_t plan_shots_pec(double gamma, double precision, double p_fail) {
  require(gamma >= 1.0, ErrorCode::InvalidArgument, "gamma must be >= 1");
  require(precision > 0.0, ErrorCode::InvalidArgument, "precision must be > 0");
  return ceil_to_int64(2.0 * gamma * gamma / (precision * precision) *
                       hoeffding_factor(p_fail));
}

std::int64_t plan_shots_emre(double c, double p_fail) {
  require(c > 0.0 && c < 1.0, ErrorCode::InvalidArgument,
          "c must lie in (0, 1)");
  return ceil_to_int64(2.0 / (c * c) * hoeffding_factor(p_fail));
}

std::int64_t plan_shots_hemre(double s_incl, double gamma_incl, double epsilon,
                              double p_fail) {
  require(s_incl >= 1.0 && gamma_incl >= 1.0, ErrorCode::InvalidArgument,
          "overheads must be >= 1");
  require(epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon must be > 0");
  double sg = s_incl * gamma_incl;
  return ceil_to_int64(2.0 * sg * sg / (epsilon * epsilon) *
                       hoeffding_factor(p_fail));
}

PostProcessed emre_postprocess(double E_B, double epsilon, double s, double o_max) {
  require(s >= 1.0, ErrorCode::InvalidArgument, "scale must be >= 1");
  require(epsilon >= 0.0, ErrorCode::InvalidArgument, "epsilon must be >= 0");
  require(o_max > 0.0, ErrorCode::InvalidArgument, "o_max must be > 0");

  const double eb = E_B / o_max;
  const double et = epsilon / o_max;
  const double edge = std::abs(et + s - 2.0);

  PostProcessed out;
  if (eb > edge) {
    out.branch = Branch::NonTrivialUpper;
    out.E = (eb - et - s + 2.0) / 2.0;
    out.b = (et + s - eb) / 2.0;
  } else if (eb < -edge) {
    out.branch = Branch::NonTrivialLower;
    out.E = (eb + et + s - 2.0) / 2.0;
    out.b = (et + s + eb) / 2.0;
  } else if (et + s >= 2.0) {
    out.branch = Branch::Trivial;
    out.E = 0.0;
    out.b = 1.0;
  } else {
    out.branch = Branch::SmallS;
    out.E = eb;
    out.b = et + s - 1.0;
  }
  out.E = std::clamp(out.E, -1.0, 1.0) * o_max;
  out.b = std::max(out.b, 0.0) * o_max;
  return out;
}

std::vector<GateDecompInfo> decompose_circuit(const CircuitIR& circuit,
                                              EmreMode emre_mode) {
  std::vector<GateDecompInfo> infos;
  infos.reserve(circuit.gates.size());
  for (const auto& gate : circuit.gates) {
    GateDecompInfo info;
    info.mitigable = circuit.noise.mitigated_for_arity(gate.arity());
    if (info.mitigable) {
      info.emre = emre_decompose(gate, circuit.noise, emre_mode);
      info.s = info.emre->scale;
      if (circuit.noise.pauli_diagonal()) {
        info.pec = pec_decompose_pauli(gate, circuit.noise);
        info.gamma = info.pec->gamma;
      }
    }
    infos.push_back(std::move(info));
  }
  return infos;
}

MitigationPlan plan_uniform(const std::vector<GateDecompInfo>& infos, GateMode mode) {
  MitigationPlan plan;
  plan.per_gate.reserve(infos.size());
  for (const auto& info : infos) {
    GateMode m = info.mitigable ? mode : GateMode::Unmitigated;
    plan.per_gate.push_back(m);
    if (info.mitigable) plan.s_total *= info.s;
    if (m == GateMode::Approximate) plan.s_incl *= info.s;
    if (m == GateMode::FullQuasiProb) plan.gamma_incl *= info.gamma;
  }
  return plan;
}

GreedySelection greedy_class_selection(std::vector<ClassRow> rows, double budget) {
  GreedySelection sel;
  if (budget < 1.0) {
    sel.infeasible = true;
    return sel;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ClassRow& a, const ClassRow& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.name < b.name;
  });
  // Unit-scale classes cost no bias budget; approve them before the loop
  // (also keeps log(s) well defined below).
  std::vector<ClassRow> pending;
  for (const auto& row : rows) {
    if (row.s <= 1.0 + 1e-15) {
      sel.approved.emplace_back(row.name, row.frequency);
    } else {
      pending.push_back(row);
    }
  }
  for (const auto& row : pending) {
    double whole = sel.s_incl * std::pow(row.s, row.frequency);
    if (whole <= budget) {
      sel.s_incl = whole;
      sel.approved.emplace_back(row.name, row.frequency);
      continue;
    }
    int m = static_cast<int>(
        std::floor(std::log(budget / sel.s_incl) / std::log(row.s) + 1e-12));
    m = std::clamp(m, 0, row.frequency);
    if (m > 0) {
      sel.s_incl *= std::pow(row.s, m);
      sel.approved.emplace_back(row.name, m);
    }
    break;
  }
  return sel;
}

WindowSelection window_scan_selection(
    const std::vector<std::pair<double, double>>& s_gamma, double budget) {
  WindowSelection best;
  const int n = static_cast<int>(s_gamma.size());
  double gamma_all = 1.0;
  for (const auto& [s, g] : s_gamma) gamma_all *= g;
  best.begin = 0;
  best.end = 0;
  best.s_incl = 1.0;
  best.tot_overhead = gamma_all;  // empty window: plain quasi-probability
  if (budget < 1.0) {
    best.infeasible = true;
    return best;
  }
  for (int j = 0; j < n; ++j) {
    double s_incl = 1.0;
    double gamma_window = 1.0;
    int i = j;
    while (i < n && s_incl * s_gamma[static_cast<size_t>(i)].first <= budget) {
      s_incl *= s_gamma[static_cast<size_t>(i)].first;
      gamma_window *= s_gamma[static_cast<size_t>(i)].second;
      ++i;
    }
    if (i == j) continue;  // nothing fits starting here
    double overhead = s_incl * gamma_all / gamma_window;
    if (overhead < best.tot_overhead - 1e-15) {
      best.begin = j;
      best.end = i;
      best.s_incl = s_incl;
      best.tot_overhead = overhead;
    }
  }
  return best;
}

namespace {

MitigationPlan finalize_plan(const std::vector<GateDecompInfo>& infos,
                             std::vector<GateMode> per_gate, bool infeasible) {
  MitigationPlan plan;
  plan.per_gate = std::move(per_gate);
  plan.infeasible_bias = infeasible;
  for (size_t i = 0; i < infos.size(); ++i) {
    if (!infos[i].mitigable) continue;
    plan.s_total *= infos[i].s;
    if (plan.per_gate[i] == GateMode::Approximate) plan.s_incl *= infos[i].s;
    if (plan.per_gate[i] == GateMode::FullQuasiProb)
      plan.gamma_incl *= infos[i].gamma;
  }
  return plan;
}

}  // namespace

MitigationPlan hemre_select_greedy(const CircuitIR& circuit,
                                   const std::vector<GateDecompInfo>& infos,
                                   double delta_fixed, double epsilon) {
  require(delta_fixed >= 0.0, ErrorCode::InvalidArgument,
          "delta_fixed must be >= 0");
  const double budget = delta_fixed - epsilon + 1.0;

  std::vector<ClassRow> rows;
  std::map<std::string, int> freq;
  std::map<std::string, double> scale;
  for (size_t i = 0; i < infos.size(); ++i) {
    if (!infos[i].mitigable) continue;
    const std::string& name = circuit.gates[i].name();
    freq[name] += 1;
    scale[name] = infos[i].s;
  }
  for (const auto& [name, f] : freq) rows.push_back({name, f, scale[name]});

  GreedySelection sel = greedy_class_selection(rows, budget);
  std::map<std::string, int> remaining;
  for (const auto& [name, count] : sel.approved) remaining[name] = count;

  std::vector<GateMode> per_gate(infos.size(), GateMode::Unmitigated);
  for (size_t i = 0; i < infos.size(); ++i) {
    if (!infos[i].mitigable) continue;
    const std::string& name = circuit.gates[i].name();
    auto it = remaining.find(name);
    if (it != remaining.end() && it->second > 0) {
      per_gate[i] = GateMode::Approximate;
      it->second -= 1;
    } else {
      per_gate[i] = GateMode::FullQuasiProb;
    }
  }
  return finalize_plan(infos, std::move(per_gate), sel.infeasible);
}

MitigationPlan hemre_select_window(const CircuitIR& circuit,
                                   const std::vector<GateDecompInfo>& infos,
                                   double delta_fixed, double epsilon) {
  require(delta_fixed >= 0.0, ErrorCode::InvalidArgument,
          "delta_fixed must be >= 0");
  (void)circuit;
  const double budget = delta_fixed - epsilon + 1.0;

  std::vector<size_t> mitigable_idx;
  for (size_t i = 0; i < infos.size(); ++i) {
    if (infos[i].mitigable) mitigable_idx.push_back(i);
  }
  std::stable_sort(mitigable_idx.begin(), mitigable_idx.end(),
                   [&infos](size_t a, size_t b) { return infos[a].s > infos[b].s; });
  std::vector<std::pair<double, double>> s_gamma;
  s_gamma.reserve(mitigable_idx.size());
  for (size_t idx : mitigable_idx)
    s_gamma.emplace_back(infos[idx].s, infos[idx].gamma);

  WindowSelection sel = window_scan_selection(s_gamma, budget);

  std::vector<GateMode> per_gate(infos.size(), GateMode::Unmitigated);
  for (size_t pos = 0; pos < mitigable_idx.size(); ++pos) {
    bool approx = static_cast<int>(pos) >= sel.begin && static_cast<int>(pos) < sel.end;
    per_gate[mitigable_idx[pos]] =
        approx ? GateMode::Approximate : GateMode::FullQuasiProb;
  }
  return finalize_plan(infos, std::move(per_gate), sel.infeasible);
}

CompiledPlan compile_plan(const CircuitIR& circuit,
                          const std::vector<GateDecompInfo>& infos,
                          const MitigationPlan& plan) {
  require(infos.size() == circuit.gates.size() &&
              plan.per_gate.size() == circuit.gates.size(),
          ErrorCode::InvalidArgument, "plan must cover every gate");
  CompiledPlan compiled;
  compiled.gamma_incl = plan.gamma_incl;
  compiled.s_incl = plan.s_incl;
  compiled.s_total = plan.s_total;
  compiled.gates.reserve(circuit.gates.size());
  for (size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& gate = circuit.gates[i];
    PlannedGate pg;
    switch (plan.per_gate[i]) {
      case GateMode::Unmitigated: {
        GateTerm term;
        term.probability = 1.0;
        term.sign = 1;
        term.steps = gate_term_steps(gate, circuit.noise, "");
        pg.terms.push_back(std::move(term));
        break;
      }
      case GateMode::Approximate: {
        require(infos[i].emre.has_value(), ErrorCode::InvalidArgument,
                "gate lacks a generalized decomposition");
        for (const auto& t : infos[i].emre->terms) {
          GateTerm term;
          term.probability = t.coefficient;
          term.sign = 1;
          term.steps = gate_term_steps(gate, circuit.noise, t.pauli_label);
          pg.terms.push_back(std::move(term));
        }
        break;
      }
      case GateMode::FullQuasiProb: {
        require(infos[i].pec.has_value(), ErrorCode::NonPauliNoise,
                "gate lacks a quasi-probability decomposition");
        double gamma = infos[i].pec->gamma;
        for (const auto& t : infos[i].pec->terms) {
          GateTerm term;
          term.probability = std::abs(t.coefficient) / gamma;
          term.sign = t.coefficient >= 0 ? 1 : -1;
          term.steps = gate_term_steps(gate, circuit.noise, t.pauli_label);
          pg.terms.push_back(std::move(term));
        }
        break;
      }
    }
    int base = 0;
    for (size_t t = 1; t < pg.terms.size(); ++t) {
      if (pg.terms[t].probability > pg.terms[static_cast<size_t>(base)].probability)
        base = static_cast<int>(t);
    }
    pg.base_index = base;
    compiled.gates.push_back(std::move(pg));
  }
  return compiled;
}

namespace {

EstimateReport base_report(const EstimatorOptions& opts, std::uint64_t seed) {
  EstimateReport rep;
  rep.method = opts.method;
  rep.p_fail = opts.p_fail;
  rep.seed = seed;
  return rep;
}

}  // namespace

EstimateReport unmitigated_estimate(const CircuitIR& circuit,
                                    const EstimatorOptions& opts, std::uint64_t seed) {
  EstimateReport rep = base_report(opts, seed);
  rep.method = "none";
  std::int64_t shots = opts.shots.value_or(1000);
  std::vector<GateDecompInfo> infos(circuit.gates.size());
  MitigationPlan plan = plan_uniform(infos, GateMode::Unmitigated);
  CompiledPlan compiled = compile_plan(circuit, infos, plan);
  ShotStats stats = run_shots(circuit, compiled, shots, seed, opts.shot_mode,
                              opts.threads);
  rep.shots = shots;
  rep.c = c_from_shots(shots, opts.p_fail);
  rep.E = stats.mean;
  rep.E_hat = stats.mean;
  rep.E_B = stats.mean;
  rep.b = rep.c;  // Hoeffding half-width of the raw mean
  rep.epsilon = rep.c;
  rep.std_error = stats.std_error;
  return rep;
}

EstimateReport pec_estimate(const CircuitIR& circuit, const EstimatorOptions& opts,
                            std::uint64_t seed) {
  EstimateReport rep = base_report(opts, seed);
  rep.method = "pec";
  std::vector<GateDecompInfo> infos = decompose_circuit(circuit, opts.emre_mode);
  MitigationPlan plan = plan_uniform(infos, GateMode::FullQuasiProb);
  CompiledPlan compiled = compile_plan(circuit, infos, plan);

  double gamma_total = plan.gamma_incl;
  std::int64_t shots = opts.shots
                           ? *opts.shots
                           : plan_shots_pec(gamma_total, opts.precision, opts.p_fail);
  ShotStats stats = run_shots(circuit, compiled, shots, seed, opts.shot_mode,
                              opts.threads);
  rep.shots = shots;
  rep.gamma_incl = gamma_total;
  rep.s_total = plan.s_total;
  rep.s_incl = 1.0;
  rep.E = stats.mean;
  rep.E_hat = gamma_total > 0 ? stats.mean / gamma_total : stats.mean;
  rep.E_B = stats.mean;
  rep.c = c_from_shots(shots, opts.p_fail);
  // Unbiased estimator; the reported b is the Monte Carlo half-width
  // gamma * sqrt(2 ln(2/p_fail) / shots).
  rep.b = gamma_total * rep.c;
  rep.epsilon = rep.b;
  rep.std_error = stats.std_error;
  return rep;
}

EstimateReport emre_estimate(const CircuitIR& circuit, const EstimatorOptions& opts,
                             std::uint64_t seed) {
  EstimateReport rep = base_report(opts, seed);
  rep.method = "emre";
  std::vector<GateDecompInfo> infos = decompose_circuit(circuit, opts.emre_mode);
  MitigationPlan plan = plan_uniform(infos, GateMode::Approximate);
  CompiledPlan compiled = compile_plan(circuit, infos, plan);

  double c;
  std::int64_t shots;
  if (opts.shots) {
    shots = *opts.shots;
    c = c_from_shots(shots, opts.p_fail);
  } else {
    require(opts.c.has_value(), ErrorCode::InvalidArgument,
            "emre needs either a shot budget or the constant c");
    c = *opts.c;
    shots = plan_shots_emre(c, opts.p_fail);
  }

  ShotStats stats = run_shots(circuit, compiled, shots, seed, opts.shot_mode,
                              opts.threads);
  double s = plan.s_total;
  rep.shots = shots;
  rep.c = c;
  rep.s_total = s;
  rep.s_incl = s;
  rep.gamma_incl = 1.0;
  rep.E_hat = stats.mean;
  rep.E_B = s * stats.mean;
  rep.epsilon = c * s;
  PostProcessed post = emre_postprocess(rep.E_B, rep.epsilon, s);
  rep.E = post.E;
  rep.b = post.b;
  rep.branch = post.branch;
  rep.std_error = s * stats.std_error;
  return rep;
}

EstimateReport hemre_estimate(const CircuitIR& circuit, const EstimatorOptions& opts,
                              std::uint64_t seed) {
  EstimateReport rep = base_report(opts, seed);
  rep.method = "hemre";
  std::vector<GateDecompInfo> infos = decompose_circuit(circuit, opts.emre_mode);
  double s_total = 1.0;
  for (const auto& info : infos)
    if (info.mitigable) s_total *= info.s;

  // The bias budget needs epsilon before the plan exists. In planned mode
  // epsilon = c * s_total directly; with a fixed shot budget we use the
  // all-approximate value s_total * sqrt(2 ln(2/pf) / M) for selection and
  // the plan-consistent half-width s_incl * gamma_incl * sqrt(...) afterwards.
  double eps_select;
  if (opts.shots) {
    eps_select = s_total * c_from_shots(*opts.shots, opts.p_fail);
  } else {
    require(opts.c.has_value(), ErrorCode::InvalidArgument,
            "hemre needs either a shot budget or the constant c");
    eps_select = *opts.c * s_total;
  }

  MitigationPlan plan =
      opts.selector == Selector::Greedy
          ? hemre_select_greedy(circuit, infos, opts.delta_fixed, eps_select)
          : hemre_select_window(circuit, infos, opts.delta_fixed, eps_select);
  CompiledPlan compiled = compile_plan(circuit, infos, plan);

  double c, eps_post;
  std::int64_t shots;
  if (opts.shots) {
    shots = *opts.shots;
    c = c_from_shots(shots, opts.p_fail);
    eps_post = plan.s_incl * plan.gamma_incl * c;
  } else {
    c = *opts.c;
    eps_post = c * (opts.hemre_epsilon_on_s_incl ? plan.s_incl : plan.s_total);
    shots = plan_shots_hemre(plan.s_incl, plan.gamma_incl, c * plan.s_total,
                             opts.p_fail);
  }

  ShotStats stats = run_shots(circuit, compiled, shots, seed, opts.shot_mode,
                              opts.threads);
  rep.shots = shots;
  rep.c = c;
  rep.s_total = plan.s_total;
  rep.s_incl = plan.s_incl;
  rep.gamma_incl = plan.gamma_incl;
  rep.infeasible_bias = plan.infeasible_bias;
  rep.E_hat = stats.mean;
  rep.E_B = plan.s_incl * stats.mean;
  rep.epsilon = eps_post;
  PostProcessed post = emre_postprocess(rep.E_B, eps_post, plan.s_incl);
  rep.E = post.E;
  rep.b = post.b;
  rep.branch = post.branch;
  rep.std_error = plan.s_incl * stats.std_error;
  return rep;
}

EstimateReport run_estimator(const CircuitIR& circuit, const EstimatorOptions& opts,
                             std::uint64_t seed) {
  if (opts.method == "none") return unmitigated_estimate(circuit, opts, seed);
  if (opts.method == "pec") return pec_estimate(circuit, opts, seed);
  if (opts.method == "emre") return emre_estimate(circuit, opts, seed);
  if (opts.method == "hemre") return hemre_estimate(circuit, opts, seed);
  fail(ErrorCode::InvalidArgument, "unknown estimator method: " + opts.method);
}

double pec_enumerate_exact(const CircuitIR& circuit, std::int64_t max_combinations) {
  circuit.validate();
  std::vector<GateDecompInfo> infos = decompose_circuit(circuit, EmreMode::ClosedForm);

  struct TermView {
    double coefficient;
    Matrix superop;
  };
  std::vector<std::vector<TermView>> table;
  table.reserve(circuit.gates.size());
  std::int64_t combos = 1;
  for (size_t i = 0; i < circuit.gates.size(); ++i) {
    std::vector<TermView> terms;
    if (infos[i].mitigable) {
      require(infos[i].pec.has_value(), ErrorCode::NonPauliNoise,
              "gate lacks a quasi-probability decomposition");
      for (const auto& t : infos[i].pec->terms)
        terms.push_back({t.coefficient, superop_from_kraus(t.channel)});
    } else {
      terms.push_back(
          {1.0, superop_from_kraus(noisy_gate_channel(circuit.gates[i], circuit.noise))});
    }
    combos *= static_cast<std::int64_t>(terms.size());
    require(combos <= max_combinations, ErrorCode::InvalidArgument,
            "term combination count exceeds the enumeration cap");
    table.push_back(std::move(terms));
  }

  double total = 0.0;
  std::function<void(size_t, const DensityMatrix&, double)> walk =
      [&](size_t gi, const DensityMatrix& rho, double coeff) {
        if (gi == table.size()) {
          total += coeff * rho.expectation(circuit.observable);
          return;
        }
        for (const auto& term : table[gi]) {
          DensityMatrix next = rho;
          next.apply_local_superop(term.superop, circuit.gates[gi].qubits);
          walk(gi + 1, next, coeff * term.coefficient);
        }
      };
  walk(0, DensityMatrix(circuit.n_qubits, circuit.input_basis_state), 1.0);
  return total;
}

}  // namespace emrekit
