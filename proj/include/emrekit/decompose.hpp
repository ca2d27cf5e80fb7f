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

#ifndef EMREKIT_DECOMPOSE_HPP_
#define EMREKIT_DECOMPOSE_HPP_

#include <string>
#include <vector>

#include "emrekit/circuit.hpp"
#include "emrekit/simulator.hpp"

namespace emrekit {

enum class DecompMode { Pec, Emre };
enum class EmreMode { ClosedForm, PositivePartOfPec };

// One implementable alternative of a decomposition: the channel
// noise o P o U on the gate's qubits, tagged with the Pauli correction.
struct DecompositionTerm {
  double coefficient = 1.0;  // signed quasi-probability, or convex weight
  std::string pauli_label;   // e.g. "I", "XZ"
  KrausChannel channel;
};

// A signed mixture of implementable operations. In Pec mode the coefficients
// sum to one and reproduce the ideal gate exactly; gamma is the absolute
// coefficient sum. In Emre mode the terms are a convex combination B with
// weights summing to one, and  scale * B - (scale - 1) * residual  equals the
// ideal gate.
struct SignedDecomposition {
  DecompMode mode = DecompMode::Pec;
  std::vector<DecompositionTerm> terms;
  double gamma = 1.0;
  double scale = 1.0;
  Matrix residual_superop;            // set when scale > 1
  double residual_coefficient = 0.0;  // scale - 1

  // Superoperator of the signed mixture (Pec) or of scale*B - (s-1)*N (Emre);
  // equals the ideal gate's superoperator for every valid decomposition.
  Matrix reconstruct_superop() const;
  // Superoperator of the convex positive part B.
  Matrix positive_part_superop() const;
};

// Quasi-probability decomposition of an ideal gate against its noisy
// implementable set {noise o P o U}, obtained by inverting the diagonal Pauli
// transfer matrix of the attached noise. Throws NonPauliNoise for
// non-Pauli-diagonal models and NonInvertibleNoise when the transfer matrix
// is singular.
SignedDecomposition pec_decompose_pauli(const Gate& gate, const NoiseModel& noise);
SignedDecomposition pec_decompose_pauli(const Matrix& unitary, const NoiseModel& noise);

// Generalized decomposition U = s*B - (s-1)*N with implementable B.
//  * ClosedForm: B is the noisy gate itself; s comes from the closed-form
//    scale of the noise (exact for depolarizing and dephasing, the
//    probabilistic-form value otherwise). Multiplicative across the qubits a
//    two-qubit gate touches.
//  * PositivePartOfPec: B is the renormalized positive part of the
//    quasi-probability decomposition, s its positive coefficient sum.
SignedDecomposition emre_decompose(const Gate& gate, const NoiseModel& noise,
                                   EmreMode mode);
SignedDecomposition emre_decompose(const Matrix& unitary, const NoiseModel& noise,
                                   EmreMode mode);

// Closed-form scale factor s(>= 1) for one noisy site of the model.
double closed_form_scale_single_site(const NoiseModel& noise);

// Diagonal of the attached-noise PTM on a gate of the given arity, ordered by
// base-4 Pauli index (first listed qubit = most significant digit).
std::vector<double> attached_ptm_diagonal(const NoiseModel& noise, int arity);

}  // namespace emrekit

#endif  // EMREKIT_DECOMPOSE_HPP_
