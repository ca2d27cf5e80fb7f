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

#ifndef EMREKIT_GATES_HPP_
#define EMREKIT_GATES_HPP_

#include <string>
#include <vector>

#include "emrekit/matrix.hpp"

namespace emrekit {

enum class GateType { I, H, X, Y, Z, S, T, Tdg, CNOT, SWAP };

// Canonical unitary of a gate type. Two-qubit matrices are written in the
// basis where the first listed qubit is the most significant bit.
const Matrix& gate_matrix(GateType type);
int gate_arity(GateType type);
const std::string& gate_name(GateType type);
GateType gate_from_name(const std::string& name);

struct Gate {
  GateType type = GateType::I;
  std::vector<int> qubits;

  Gate() = default;
  Gate(GateType t, std::vector<int> q);

  const Matrix& matrix() const { return gate_matrix(type); }
  int arity() const { return gate_arity(type); }
  const std::string& name() const { return gate_name(type); }
  bool single_qubit() const { return arity() == 1; }
};

}  // namespace emrekit

#endif  // EMREKIT_GATES_HPP_
