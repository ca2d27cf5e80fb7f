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

#ifndef EMREKIT_CIRCUIT_HPP_
#define EMREKIT_CIRCUIT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "emrekit/gates.hpp"
#include "emrekit/noise.hpp"

namespace emrekit {

// Hard cap for dense density-matrix evolution.
inline constexpr int kMaxQubits = 10;

// Pauli string over I, X, Y, Z; character k acts on qubit k. Qubit 0 is the
// most significant bit of basis-state indices.
struct PauliString {
  std::string letters;

  PauliString() = default;
  explicit PauliString(std::string s);
  int n_qubits() const { return static_cast<int>(letters.size()); }
  static PauliString z_on(int qubit, int n_qubits);
};

struct CircuitIR {
  int n_qubits = 0;
  std::vector<Gate> gates;
  NoiseModel noise;
  PauliString observable;
  std::uint64_t input_basis_state = 0;

  void validate() const;
  int count_gates(GateType type) const;
};

// 7-qubit SWAP test between |000> and a GHZ state: qubit 0 is the ancilla,
// qubits 1-3 hold the GHZ state, qubits 4-6 hold |000>. Controlled swaps are
// compiled to {H, T, Tdg, CNOT} (each controlled-SWAP is three Toffolis, one
// per CNOT of the XOR swap). The observable is Z on the ancilla.
// With both_registers_ghz the second register is also prepared in the GHZ
// state, making the ideal overlap 1.
CircuitIR build_swap_test_circuit(bool both_registers_ghz = false);

// Parses the circuit interchange format:
// { "n_qubits": 2, "gates": [{"name": "H", "qubits": [0]}, ...],
//   "observable": "ZI", "input": "00" }
CircuitIR circuit_from_json(const std::string& text);

// Uniformly random circuit over {H, X, Y, Z, S, T, Tdg, CNOT}; used by
// randomized checks and the benchmark harness.
CircuitIR random_circuit(int n_qubits, int n_gates, RngStream& rng);

}  // namespace emrekit

#endif  // EMREKIT_CIRCUIT_HPP_
