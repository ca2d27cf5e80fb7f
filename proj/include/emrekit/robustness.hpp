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

#ifndef EMREKIT_ROBUSTNESS_HPP_
#define EMREKIT_ROBUSTNESS_HPP_

#include "emrekit/decompose.hpp"

namespace emrekit {

enum class RobustnessMethod { ClosedForm, CertifiedBounds, PositivePartOfPec };

// Generalized robustness R+ of a unitary against the implementable set
// {noise o W}. gamma_plus = 2 R+ + 1 by definition.
struct RobustnessReport {
  double r_plus = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double gamma_plus = 1.0;
  RobustnessMethod method = RobustnessMethod::ClosedForm;
  bool exact = true;
};

// Closed forms / bounds per noise model:
//  * d-dimensional depolarizing: exact (d^2-1)p / (d^2 + p - d^2 p);
//  * single-qubit dephasing: exact p / (2 - p);
//  * local depolarizing on n qubits (n >= 2): upper bound (4/(4-3p))^n - 1;
//  * probabilistic noise with probability q: upper bound q / (1 - q),
//    powered per qubit for n >= 2.
RobustnessReport closed_form_r_plus(const NoiseModel& noise, int n_qubits);

// Robustness bounds implied by a generalized decomposition U = sB - (s-1)N:
//   upper     = s - 1
//   lower_raw = Tr[Phi+ J^{E'}] / (d^2 s),  E' = s B o U^dag
//   lower     = lower_raw - 1   (the dual objective Tr[J^U beta] - 1)
// The raw value is 1 for a noiseless decomposition, so the dual-objective
// offset is the form that anchors at R+ = 0; both are exposed.
struct DecompositionBounds {
  double lower_raw = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
DecompositionBounds decomposition_robustness_bounds(const SignedDecomposition& decomp,
                                                    const Gate& gate);
DecompositionBounds decomposition_robustness_bounds(const SignedDecomposition& decomp,
                                                    const Matrix& unitary);

struct CertificateReport {
  double certified_lower = 0.0;  // Tr[J^U beta] - 1
  double max_constraint = 0.0;   // largest sampled Tr[J^Y beta]
  double min_constraint = 0.0;
  bool feasible = false;
  int samples = 0;
};

// The dual-feasible witness built in the closed-form proofs:
// beta = J^U / (d^2 + p - d^2 p) for depolarizing, J^U / (2(2-p)) for
// dephasing, J^U / d^2 when noiseless.
Matrix canonical_dual_certificate(const NoiseModel& noise, const Gate& gate);
Matrix canonical_dual_certificate(const NoiseModel& noise, const Matrix& unitary);

// Verifies 0 <= Tr[J^Y beta] <= 1 over `samples` random implementable
// channels Y = noise o W (Haar Stinespring W, environment dimension d) plus
// the extremal candidates W in {id, U, P o U}. Returns the certified lower
// bound Tr[J^U beta] - 1. Throws InfeasibleCertificate on violation.
CertificateReport dual_certificate_check(const NoiseModel& noise, const Gate& gate,
                                         const Matrix& beta, int samples,
                                         std::uint64_t seed);
CertificateReport dual_certificate_check(const NoiseModel& noise, const Matrix& unitary,
                                         const Matrix& beta, int samples,
                                         std::uint64_t seed);

}  // namespace emrekit

#endif  // EMREKIT_ROBUSTNESS_HPP_
