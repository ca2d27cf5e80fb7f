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

#include "emrekit/emrekit_c.h"

#include <cstring>
#include <sstream>
#include <string>

#include "emrekit/bench.hpp"

using namespace emrekit;

struct emk_circuit {
  CircuitIR circuit;
};

struct emk_noise {
  NoiseModel model;
};

namespace {

thread_local std::string g_last_error;

emk_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Unknown: return EMK_ERR_UNKNOWN;
    case ErrorCode::InvalidArgument: return EMK_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidProbability: return EMK_ERR_INVALID_PROBABILITY;
    case ErrorCode::DimensionMismatch: return EMK_ERR_DIMENSION_MISMATCH;
    case ErrorCode::CompletenessViolation: return EMK_ERR_COMPLETENESS_VIOLATION;
    case ErrorCode::NonInvertibleNoise: return EMK_ERR_NON_INVERTIBLE_NOISE;
    case ErrorCode::NonPauliNoise: return EMK_ERR_NON_PAULI_NOISE;
    case ErrorCode::UnsupportedNoise: return EMK_ERR_UNSUPPORTED_NOISE;
    case ErrorCode::InfeasibleCertificate: return EMK_ERR_INFEASIBLE_CERTIFICATE;
    case ErrorCode::ParseError: return EMK_ERR_PARSE;
    case ErrorCode::Io: return EMK_ERR_IO;
  }
  return EMK_ERR_UNKNOWN;
}

template <typename Fn>
emk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return EMK_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EMK_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown failure";
    return EMK_ERR_UNKNOWN;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Gate gate_for_robustness(const std::string& name) {
  GateType t = gate_from_name(name.empty() ? "I" : name);
  if (gate_arity(t) == 1) return Gate(t, {0});
  return Gate(t, {0, 1});
}

emk_status run_sweep_command(bool simulate, const char* config_text,
                             const char* out_dir, int64_t seed_override,
                             int32_t threads, char** out_message) {
  return guarded([&] {
    require(config_text != nullptr, ErrorCode::InvalidArgument, "null config");
    ExperimentConfig cfg = load_experiment_config(config_text);
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    std::string dir = out_dir && out_dir[0] != '\0' ? out_dir : cfg.output;
    SweepResult result = simulate ? run_simulate_sweep(cfg, threads)
                                  : run_mitigate_sweep(cfg, threads);
    std::vector<std::string> files = write_sweep_outputs(cfg, result, dir, simulate);
    if (out_message != nullptr) {
      std::ostringstream msg;
      msg << (simulate ? "simulate" : "mitigate") << ": " << result.summary.size()
          << " summary rows, " << result.runs.size() << " runs\n";
      for (const auto& f : files) msg << "wrote " << f << "\n";
      *out_message = dup_string(msg.str());
    }
  });
}

}  // namespace

extern "C" {

uint32_t emk_version(void) { return 0x000100u; /* 0.1.0 */ }

const char* emk_status_name(emk_status status) {
  switch (status) {
    case EMK_OK: return "ok";
    case EMK_ERR_UNKNOWN: return "unknown";
    case EMK_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case EMK_ERR_INVALID_PROBABILITY: return "invalid_probability";
    case EMK_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case EMK_ERR_COMPLETENESS_VIOLATION: return "completeness_violation";
    case EMK_ERR_NON_INVERTIBLE_NOISE: return "non_invertible_noise";
    case EMK_ERR_NON_PAULI_NOISE: return "non_pauli_noise";
    case EMK_ERR_UNSUPPORTED_NOISE: return "unsupported_noise";
    case EMK_ERR_INFEASIBLE_CERTIFICATE: return "infeasible_certificate";
    case EMK_ERR_PARSE: return "parse_error";
    case EMK_ERR_IO: return "io_error";
  }
  return "unknown";
}

const char* emk_last_error(void) { return g_last_error.c_str(); }

void emk_string_free(char* s) { delete[] s; }

emk_status emk_circuit_builtin(const char* name, emk_circuit** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    *out = new emk_circuit{load_circuit(name)};
  });
}

emk_status emk_circuit_from_json(const char* json_text, emk_circuit** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    *out = new emk_circuit{circuit_from_json(json_text)};
  });
}

void emk_circuit_free(emk_circuit* circuit) { delete circuit; }

int32_t emk_circuit_num_qubits(const emk_circuit* circuit) {
  return circuit ? circuit->circuit.n_qubits : 0;
}

int32_t emk_circuit_num_gates(const emk_circuit* circuit) {
  return circuit ? static_cast<int32_t>(circuit->circuit.gates.size()) : 0;
}

emk_status emk_noise_depolarizing_local(double p, emk_noise** out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::InvalidArgument, "null argument");
    *out = new emk_noise{NoiseModel::depolarizing_local(p)};
  });
}

emk_status emk_noise_depolarizing_ddim(double p, int32_t dim, emk_noise** out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::InvalidArgument, "null argument");
    *out = new emk_noise{NoiseModel::depolarizing_ddim(p, dim)};
  });
}

emk_status emk_noise_dephasing(double p, emk_noise** out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::InvalidArgument, "null argument");
    *out = new emk_noise{NoiseModel::dephasing(p)};
  });
}

emk_status emk_noise_inhomogeneous_pauli(double px, double py, double pz,
                                         emk_noise** out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::InvalidArgument, "null argument");
    *out = new emk_noise{NoiseModel::inhomogeneous_pauli(px, py, pz)};
  });
}

emk_status emk_noise_from_json(const char* json_text, emk_noise** out) {
  return guarded([&] {
    require(json_text != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::ParseError, std::string("noise JSON: ") + e.what());
    }
    *out = new emk_noise{noise_from_json(j)};
  });
}

emk_status emk_noise_from_spec(const char* spec, emk_noise** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    *out = new emk_noise{noise_from_spec(spec)};
  });
}

void emk_noise_free(emk_noise* noise) { delete noise; }

emk_status emk_exact_expectation(const emk_circuit* circuit, const emk_noise* noise,
                                 double* out) {
  return guarded([&] {
    require(circuit != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    CircuitIR c = circuit->circuit;
    c.noise = noise ? noise->model : NoiseModel::none();
    *out = exact_expectation(c);
  });
}

emk_status emk_estimate(const emk_circuit* circuit, const emk_noise* noise,
                        const char* estimator_json, uint64_t seed, int32_t threads,
                        emk_estimate_report* out) {
  return guarded([&] {
    require(circuit != nullptr && estimator_json != nullptr && out != nullptr,
            ErrorCode::InvalidArgument, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(estimator_json);
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::ParseError, std::string("estimator JSON: ") + e.what());
    }
    EstimatorOptions opts = estimator_from_json(j);
    opts.threads = threads;
    CircuitIR c = circuit->circuit;
    c.noise = noise ? noise->model : NoiseModel::none();
    EstimateReport rep = run_estimator(c, opts, seed);
    out->E = rep.E;
    out->b = rep.b;
    out->E_B = rep.E_B;
    out->E_hat = rep.E_hat;
    out->epsilon = rep.epsilon;
    out->c = rep.c;
    out->p_fail = rep.p_fail;
    out->shots = rep.shots;
    out->branch = static_cast<int32_t>(rep.branch);
    out->seed = rep.seed;
    out->s_total = rep.s_total;
    out->s_incl = rep.s_incl;
    out->gamma_incl = rep.gamma_incl;
    out->std_error = rep.std_error;
    out->infeasible_bias = rep.infeasible_bias ? 1 : 0;
  });
}

emk_status emk_plan_shots_pec(double gamma, double precision, double p_fail,
                              int64_t* out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::InvalidArgument, "null argument");
    *out = plan_shots_pec(gamma, precision, p_fail);
  });
}

emk_status emk_plan_shots_emre(double c, double p_fail, int64_t* out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::InvalidArgument, "null argument");
    *out = plan_shots_emre(c, p_fail);
  });
}

emk_status emk_plan_shots_hemre(double s_incl, double gamma_incl, double epsilon,
                                double p_fail, int64_t* out) {
  return guarded([&] {
    require(out != nullptr, ErrorCode::InvalidArgument, "null argument");
    *out = plan_shots_hemre(s_incl, gamma_incl, epsilon, p_fail);
  });
}

emk_status emk_emre_postprocess(double E_B, double epsilon, double s, double o_max,
                                double* E, double* b, int32_t* branch) {
  return guarded([&] {
    require(E != nullptr && b != nullptr && branch != nullptr,
            ErrorCode::InvalidArgument, "null argument");
    PostProcessed post = emre_postprocess(E_B, epsilon, s, o_max);
    *E = post.E;
    *b = post.b;
    *branch = static_cast<int32_t>(post.branch);
  });
}

emk_status emk_robustness_closed_form(const emk_noise* noise, int32_t n_qubits,
                                      emk_robustness_report* out) {
  return guarded([&] {
    require(noise != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    RobustnessReport rep = closed_form_r_plus(noise->model, n_qubits);
    out->r_plus = rep.r_plus;
    out->lower = rep.lower;
    out->upper = rep.upper;
    out->gamma_plus = rep.gamma_plus;
    out->method = rep.method == RobustnessMethod::ClosedForm
                      ? EMK_METHOD_CLOSED_FORM
                      : EMK_METHOD_CERTIFIED_BOUNDS;
    out->exact = rep.exact ? 1 : 0;
  });
}

emk_status emk_pec_gamma(const emk_noise* noise, const char* gate_name, double* out) {
  return guarded([&] {
    require(noise != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    Gate gate = gate_for_robustness(gate_name ? gate_name : "I");
    *out = pec_decompose_pauli(gate, noise->model).gamma;
  });
}

emk_status emk_dual_certificate_check(const emk_noise* noise, const char* gate_name,
                                      int32_t samples, uint64_t seed,
                                      emk_certificate_report* out) {
  return guarded([&] {
    require(noise != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    Gate gate = gate_for_robustness(gate_name ? gate_name : "I");
    Matrix beta = canonical_dual_certificate(noise->model, gate);
    CertificateReport rep =
        dual_certificate_check(noise->model, gate, beta, samples, seed);
    out->certified_lower = rep.certified_lower;
    out->max_constraint = rep.max_constraint;
    out->min_constraint = rep.min_constraint;
    out->feasible = rep.feasible ? 1 : 0;
    out->samples = rep.samples;
  });
}

emk_status emk_robustness_report_text(const char* noise_spec, const char* gate_name,
                                      int32_t as_json, char** out) {
  return guarded([&] {
    require(noise_spec != nullptr && out != nullptr, ErrorCode::InvalidArgument,
            "null argument");
    NoiseModel model = noise_from_spec(noise_spec);
    Gate gate = gate_for_robustness(gate_name ? gate_name : "I");
    const int n_qubits = gate.arity();

    RobustnessReport closed = closed_form_r_plus(model, n_qubits);
    SignedDecomposition emre = emre_decompose(gate, model, EmreMode::ClosedForm);
    DecompositionBounds bounds = decomposition_robustness_bounds(emre, gate);

    nlohmann::json doc;
    doc["noise"] = model.label();
    doc["gate"] = gate.name();
    doc["r_plus"] = closed.r_plus;
    doc["gamma_plus"] = closed.gamma_plus;
    doc["method"] =
        closed.method == RobustnessMethod::ClosedForm ? "closed_form" : "certified_bounds";
    doc["exact"] = closed.exact;
    doc["scale_s"] = emre.scale;
    doc["bounds"] = {{"upper", bounds.upper},
                     {"lower_raw", bounds.lower_raw},
                     {"lower", bounds.lower}};

    bool pauli = model.pauli_diagonal();
    if (pauli) {
      SignedDecomposition pec = pec_decompose_pauli(gate, model);
      doc["gamma_pec"] = pec.gamma;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : pec.terms) {
        terms.push_back({{"coefficient", t.coefficient},
                         {"pauli", t.pauli_label},
                         {"gate", gate.name()},
                         {"noisy", model.enabled()}});
      }
      doc["pec_decomposition"] = std::move(terms);
    }

    std::string cert_status = "unavailable";
    double cert_lower = 0.0;
    try {
      Matrix beta = canonical_dual_certificate(model, gate);
      CertificateReport cert = dual_certificate_check(model, gate, beta, 1000, 0x5eedULL);
      cert_lower = cert.certified_lower;
      double gap = closed.upper - cert.certified_lower;
      cert_status = std::abs(gap) <= 1e-9 ? "tight" : "feasible";
      doc["certificate"] = {{"status", cert_status},
                            {"certified_lower", cert.certified_lower},
                            {"max_constraint", cert.max_constraint},
                            {"samples", cert.samples}};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InfeasibleCertificate) throw;
      doc["certificate"] = {{"status", "unavailable"}};
    }

    if (as_json) {
      *out = dup_string(doc.dump(2));
      return;
    }
    std::ostringstream text;
    text << "noise           : " << model.label() << "\n";
    text << "gate            : " << gate.name() << "\n";
    text << "R+              : " << closed.r_plus
         << (closed.exact ? "  (exact)" : "  (upper bound)") << "\n";
    text << "gamma+ = 2R+ + 1: " << closed.gamma_plus << "\n";
    if (doc.contains("gamma_pec"))
      text << "gamma (pec)     : " << doc["gamma_pec"].get<double>() << "\n";
    text << "scale s         : " << emre.scale << "\n";
    text << "bounds          : lower_raw=" << bounds.lower_raw
         << " lower=" << bounds.lower << " upper=" << bounds.upper << "\n";
    text << "certificate     : " << cert_status;
    if (cert_status != "unavailable") text << " (lower=" << cert_lower << ")";
    text << "\n";
    *out = dup_string(text.str());
  });
}

emk_status emk_run_simulate(const char* config_text, const char* out_dir,
                            int64_t seed_override, int32_t threads,
                            char** out_message) {
  return run_sweep_command(true, config_text, out_dir, seed_override, threads,
                           out_message);
}

emk_status emk_run_mitigate(const char* config_text, const char* out_dir,
                            int64_t seed_override, int32_t threads,
                            char** out_message) {
  return run_sweep_command(false, config_text, out_dir, seed_override, threads,
                           out_message);
}

}  // extern "C"
