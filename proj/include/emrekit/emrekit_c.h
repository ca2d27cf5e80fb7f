/* Copyright 2026 The emre-kit developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the emre-kit shared library. All entry points return an
 * emk_status; on failure emk_last_error() carries a thread-local message.
 * Objects are opaque handles released with the matching *_free function. */

#ifndef EMREKIT_EMREKIT_C_H_
#define EMREKIT_EMREKIT_C_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t emk_status;

#define EMK_OK 0
#define EMK_ERR_UNKNOWN 1
#define EMK_ERR_INVALID_ARGUMENT 2
#define EMK_ERR_INVALID_PROBABILITY 3
#define EMK_ERR_DIMENSION_MISMATCH 4
#define EMK_ERR_COMPLETENESS_VIOLATION 5
#define EMK_ERR_NON_INVERTIBLE_NOISE 6
#define EMK_ERR_NON_PAULI_NOISE 7
#define EMK_ERR_UNSUPPORTED_NOISE 8
#define EMK_ERR_INFEASIBLE_CERTIFICATE 9
#define EMK_ERR_PARSE 10
#define EMK_ERR_IO 11

/* Post-processing branches. */
#define EMK_BRANCH_NONE 0
#define EMK_BRANCH_TRIVIAL 1
#define EMK_BRANCH_NON_TRIVIAL_UPPER 2
#define EMK_BRANCH_NON_TRIVIAL_LOWER 3
#define EMK_BRANCH_SMALL_S 4

/* Robustness report methods. */
#define EMK_METHOD_CLOSED_FORM 0
#define EMK_METHOD_CERTIFIED_BOUNDS 1

uint32_t emk_version(void);
const char* emk_status_name(emk_status status);
/* Message of the last failure on this thread; empty string if none. */
const char* emk_last_error(void);
/* Frees strings returned through char** out-parameters. */
void emk_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Circuits                                                            */
/* ------------------------------------------------------------------ */

typedef struct emk_circuit emk_circuit;

/* Builtins: "swap_test", "swap_test_ghz_ghz". */
emk_status emk_circuit_builtin(const char* name, emk_circuit** out);
/* { "n_qubits": 2, "gates": [{"name": "H", "qubits": [0]}],
 *   "observable": "ZI", "input": "00" } */
emk_status emk_circuit_from_json(const char* json_text, emk_circuit** out);
void emk_circuit_free(emk_circuit* circuit);
int32_t emk_circuit_num_qubits(const emk_circuit* circuit);
int32_t emk_circuit_num_gates(const emk_circuit* circuit);

/* ------------------------------------------------------------------ */
/* Noise models                                                        */
/* ------------------------------------------------------------------ */

typedef struct emk_noise emk_noise;

emk_status emk_noise_depolarizing_local(double p, emk_noise** out);
emk_status emk_noise_depolarizing_ddim(double p, int32_t dim, emk_noise** out);
emk_status emk_noise_dephasing(double p, emk_noise** out);
emk_status emk_noise_inhomogeneous_pauli(double px, double py, double pz,
                                         emk_noise** out);
/* JSON object, same schema as the noise entries of experiment configs. */
emk_status emk_noise_from_json(const char* json_text, emk_noise** out);
/* Compact form, e.g. "dephasing:0.1" or "depolarizing_ddim:p=0.01,d=2". */
emk_status emk_noise_from_spec(const char* spec, emk_noise** out);
void emk_noise_free(emk_noise* noise);

/* ------------------------------------------------------------------ */
/* Simulation and estimation                                           */
/* ------------------------------------------------------------------ */

/* Exact expectation by density-matrix evolution; `noise` may be NULL for the
 * noiseless value. */
emk_status emk_exact_expectation(const emk_circuit* circuit, const emk_noise* noise,
                                 double* out);

typedef struct {
  double E;
  double b;
  double E_B;
  double E_hat;
  double epsilon;
  double c;
  double p_fail;
  int64_t shots;
  int32_t branch;
  uint64_t seed;
  double s_total;
  double s_incl;
  double gamma_incl;
  double std_error;
  int32_t infeasible_bias;
} emk_estimate_report;

/* Runs one estimator. estimator_json mirrors a config method entry, e.g.
 * {"method": "emre", "shots": 1000, "p_fail": 0.01}. threads <= 0 resolves
 * via EMREKIT_THREADS / hardware concurrency. */
emk_status emk_estimate(const emk_circuit* circuit, const emk_noise* noise,
                        const char* estimator_json, uint64_t seed, int32_t threads,
                        emk_estimate_report* out);

/* Shot planners. */
emk_status emk_plan_shots_pec(double gamma, double precision, double p_fail,
                              int64_t* out);
emk_status emk_plan_shots_emre(double c, double p_fail, int64_t* out);
emk_status emk_plan_shots_hemre(double s_incl, double gamma_incl, double epsilon,
                                double p_fail, int64_t* out);

/* Post-processing flowchart; o_max is 1 for Pauli observables. */
emk_status emk_emre_postprocess(double E_B, double epsilon, double s, double o_max,
                                double* E, double* b, int32_t* branch);

/* ------------------------------------------------------------------ */
/* Robustness                                                          */
/* ------------------------------------------------------------------ */

typedef struct {
  double r_plus;
  double lower;
  double upper;
  double gamma_plus;
  int32_t method; /* EMK_METHOD_* */
  int32_t exact;
} emk_robustness_report;

emk_status emk_robustness_closed_form(const emk_noise* noise, int32_t n_qubits,
                                      emk_robustness_report* out);

/* Quasi-probability overhead gamma of one gate under the noise model. */
emk_status emk_pec_gamma(const emk_noise* noise, const char* gate_name, double* out);

typedef struct {
  double certified_lower;
  double max_constraint;
  double min_constraint;
  int32_t feasible;
  int32_t samples;
} emk_certificate_report;

/* Feasibility check of the canonical dual certificate over `samples` random
 * implementable channels plus the proof extremal points. */
emk_status emk_dual_certificate_check(const emk_noise* noise, const char* gate_name,
                                      int32_t samples, uint64_t seed,
                                      emk_certificate_report* out);

/* Full robustness report (closed form, decomposition bounds, certificate,
 * quasi-probability decomposition) as a JSON string or plain text.
 * Free *out with emk_string_free. */
emk_status emk_robustness_report_text(const char* noise_spec, const char* gate_name,
                                      int32_t as_json, char** out);

/* ------------------------------------------------------------------ */
/* Benchmark harness                                                   */
/* ------------------------------------------------------------------ */

/* config_text is TOML or JSON. seed_override < 0 keeps the config seed.
 * On success *out_message (optional) lists the files written. */
emk_status emk_run_simulate(const char* config_text, const char* out_dir,
                            int64_t seed_override, int32_t threads,
                            char** out_message);
emk_status emk_run_mitigate(const char* config_text, const char* out_dir,
                            int64_t seed_override, int32_t threads,
                            char** out_message);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EMREKIT_EMREKIT_C_H_ */
