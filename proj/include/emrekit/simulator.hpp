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

#ifndef EMREKIT_SIMULATOR_HPP_
#define EMREKIT_SIMULATOR_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "emrekit/circuit.hpp"

namespace emrekit {

// Dense density matrix on n qubits; qubit 0 is the most significant bit.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits, std::uint64_t basis_state = 0);

  int n_qubits() const { return n_; }
  int dim() const { return 1 << n_; }
  std::vector<cplx>& data() { return a_; }
  const std::vector<cplx>& data() const { return a_; }

  double trace_real() const;
  double purity() const;
  Matrix as_matrix() const;

  // Applies a channel given as a superoperator on the listed qubits (at most
  // two). The superoperator acts on row-major local vectorization with the
  // first listed qubit as the most significant local bit.
  void apply_local_superop(const Matrix& superop, const std::vector<int>& qubits);

  // Real part of Tr[P rho] for a Pauli string.
  double expectation(const PauliString& p) const;

  // Invariant checks (Hermitian / unit trace / PSD within tol).
  bool valid_state(double tol) const;

 private:
  int n_;
  std::vector<cplx> a_;
};

// The executable channel of one gate instance: ideal unitary followed by the
// model's attached noise on the touched qubits.
KrausChannel noisy_gate_channel(const Gate& gate, const NoiseModel& noise);
KrausChannel ideal_gate_channel(const Gate& gate);

// Tensor extension of a local operator / channel to the full register
// (identity on untouched qubits).
Matrix embed_operator(const Matrix& op, const std::vector<int>& qubits, int n_qubits);
KrausChannel embed_channel(const KrausChannel& ch, const std::vector<int>& qubits,
                           int n_qubits);

// Exact expectation value Tr[O E_D ... E_1(|in><in|)] by full density-matrix
// evolution. `substitutions` replaces the channel of selected gate indices
// (superoperators on the gate's own qubits).
double exact_expectation(const CircuitIR& circuit,
                         const std::map<int, Matrix>* substitutions = nullptr);
// Same, with the circuit's noise model overridden.
double exact_expectation_with_noise(const CircuitIR& circuit,
                                    const NoiseModel& noise);

// ---------------------------------------------------------------------------
// Trajectory sampling
// ---------------------------------------------------------------------------

enum class ShotMode { SingleShot, ExactTrajectory };

// One local operation on at most two qubits.
struct LocalChannelStep {
  std::vector<int> qubits;
  Matrix superop;
};

// One sampled alternative for a gate: its executable steps, sampling
// probability, and the sign its coefficient carries. Two-qubit unitaries are
// kept as their own step so their monomial structure stays exploitable; the
// per-qubit correction-and-noise channels follow as single-qubit steps.
struct GateTerm {
  double probability = 1.0;
  int sign = 1;
  std::vector<LocalChannelStep> steps;
};

struct PlannedGate {
  std::vector<GateTerm> terms;
  int base_index = 0;  // highest-probability term; anchor for prefix caching
};

// Executable steps of one gate alternative: the ideal unitary composed with
// the attached noise and the Pauli correction `pauli_label` (one letter per
// touched qubit; empty means no correction). Single-qubit gates fuse into one
// step.
std::vector<LocalChannelStep> gate_term_steps(const Gate& gate,
                                              const NoiseModel& noise,
                                              const std::string& pauli_label);

// A circuit compiled for sampling, together with the plan-level bookkeeping
// constants the estimators need.
struct CompiledPlan {
  std::vector<PlannedGate> gates;
  double gamma_incl = 1.0;  // product of gamma over quasi-probability gates
  double s_incl = 1.0;      // product of s over approximated gates
  double s_total = 1.0;     // product of s over all decomposable gates
};

struct Trajectory {
  std::vector<std::int32_t> choices;
  int sign = 1;
  double weight = 1.0;   // gamma_incl
  double outcome = 0.0;  // +-1 in single-shot mode, Tr[O rho] otherwise
};

struct ShotStats {
  std::int64_t shots = 0;
  double mean = 0.0;       // mean of weight * sign * outcome
  double std_error = 0.0;  // sample standard error of that mean
  std::vector<double> values;
  std::vector<Trajectory> records;
};

// Runs `shots` independent trajectories. Per-shot randomness comes from
// RngStream::derive(seed, {shot}), so the result is bit-identical for any
// thread count. Each shot first draws one uniform per multi-term gate (in
// circuit order), then, in single-shot mode, one uniform for the measurement.
ShotStats run_shots(const CircuitIR& circuit, const CompiledPlan& plan,
                    std::int64_t shots, std::uint64_t seed, ShotMode mode,
                    int threads = 0, bool want_records = false);

}  // namespace emrekit

#endif  // EMREKIT_SIMULATOR_HPP_
