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

#ifndef EMREKIT_NOISE_HPP_
#define EMREKIT_NOISE_HPP_

#include <memory>
#include <string>
#include <vector>

#include "emrekit/channel.hpp"
#include "emrekit/gates.hpp"

namespace emrekit {

enum class NoiseKind {
  None,
  // E(rho) = (1 - 3p/4) rho + p/4 (X rho X + Y rho Y + Z rho Z), per qubit.
  DepolarizingLocal,
  // E(rho) = (1 - p) rho + p Tr[rho] I/d on a d-dimensional system.
  DepolarizingDDim,
  // E(rho) = (1 - p/2) rho + p/2 Z rho Z.
  Dephasing,
  // E(rho) = (1 - px - py - pz) rho + px X rho X + py Y rho Y + pz Z rho Z.
  InhomogeneousPauli,
  // E(rho) = (1 - p) rho + p N(rho) for a supplied channel N.
  ProbabilisticGeneric,
};

enum class NoiseAttachment { AfterEveryGateLocal, AfterEveryGateJoint, None };

struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  double p = 0.0;
  double px = 0.0, py = 0.0, pz = 0.0;
  int dim = 2;
  // Payload channel for ProbabilisticGeneric.
  std::shared_ptr<const KrausChannel> generic;

  NoiseAttachment attachment = NoiseAttachment::AfterEveryGateLocal;
  // Which gate classes receive noise / are included in mitigation plans.
  bool noisy_single = true;
  bool noisy_two = true;
  bool mitigate_single = true;
  bool mitigate_two = true;

  static NoiseModel none();
  static NoiseModel depolarizing_local(double p);
  static NoiseModel depolarizing_ddim(double p, int dim);
  static NoiseModel dephasing(double p);
  static NoiseModel inhomogeneous_pauli(double px, double py, double pz);
  static NoiseModel probabilistic_generic(double p, KrausChannel channel);

  void validate() const;
  bool enabled() const { return kind != NoiseKind::None && attachment != NoiseAttachment::None; }
  // The headline parameter: p, or px + py + pz for the inhomogeneous model.
  double parameter_p() const;
  // Probability that anything other than the identity acts, in the
  // probabilistic form of the channel.
  double total_probability() const;
  // True when the single-site channel is diagonal in the Pauli transfer basis.
  bool pauli_diagonal() const;
  // Whether a gate of the given arity gets noise attached / is mitigated.
  bool noisy_for_arity(int arity) const;
  bool mitigated_for_arity(int arity) const;
  std::string label() const;
};

// The elementary noise channel of the model: single-qubit for the local
// kinds, d-dimensional for DepolarizingDDim, the payload for
// ProbabilisticGeneric. Identity channel for None.
KrausChannel make_noise_channel(const NoiseModel& model);

// Noise attached to a gate touching `arity` qubits, as one joint channel on
// those qubits. Local attachment tensors the elementary channel per qubit;
// joint attachment uses d-dimensional depolarizing on the full gate space.
// Identity when the model does not apply noise to that gate class.
KrausChannel make_attached_noise(const NoiseModel& model, int arity);

// Diagonal of the single-site PTM for Pauli-diagonal models, in I,X,Y,Z order.
std::vector<double> noise_ptm_diagonal(const NoiseModel& model);

}  // namespace emrekit

#endif  // EMREKIT_NOISE_HPP_
