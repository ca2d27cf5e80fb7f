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

#include "emrekit/gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_set>

namespace emrekit {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Matrix make_gate_matrix(GateType type) {
  const cplx i1(0, 1);
  switch (type) {
    case GateType::I:
      return Matrix::identity(2);
    case GateType::H:
      return kInvSqrt2 * Matrix{{1, 1}, {1, -1}};
    case GateType::X:
      return Matrix{{0, 1}, {1, 0}};
    case GateType::Y:
      return Matrix{{0, -i1}, {i1, 0}};
    case GateType::Z:
      return Matrix{{1, 0}, {0, -1}};
    case GateType::S:
      return Matrix{{1, 0}, {0, i1}};
    case GateType::T:
      return Matrix{{1, 0}, {0, std::exp(i1 * (M_PI / 4))}};
    case GateType::Tdg:
      return Matrix{{1, 0}, {0, std::exp(-i1 * (M_PI / 4))}};
    case GateType::CNOT:
      return Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    case GateType::SWAP:
      return Matrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  }
  fail(ErrorCode::InvalidArgument, "unknown gate type");
}

}  // namespace

const Matrix& gate_matrix(GateType type) {
  static const std::array<Matrix, 10> table = {
      make_gate_matrix(GateType::I),    make_gate_matrix(GateType::H),
      make_gate_matrix(GateType::X),    make_gate_matrix(GateType::Y),
      make_gate_matrix(GateType::Z),    make_gate_matrix(GateType::S),
      make_gate_matrix(GateType::T),    make_gate_matrix(GateType::Tdg),
      make_gate_matrix(GateType::CNOT), make_gate_matrix(GateType::SWAP)};
  return table[static_cast<size_t>(type)];
}

int gate_arity(GateType type) {
  return (type == GateType::CNOT || type == GateType::SWAP) ? 2 : 1;
}

const std::string& gate_name(GateType type) {
  static const std::array<std::string, 10> names = {
      "I", "H", "X", "Y", "Z", "S", "T", "Tdg", "CNOT", "SWAP"};
  return names[static_cast<size_t>(type)];
}

GateType gate_from_name(const std::string& name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name)
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "i" || lower == "id") return GateType::I;
  if (lower == "h") return GateType::H;
  if (lower == "x") return GateType::X;
  if (lower == "y") return GateType::Y;
  if (lower == "z") return GateType::Z;
  if (lower == "s") return GateType::S;
  if (lower == "t") return GateType::T;
  if (lower == "tdg" || lower == "tdag") return GateType::Tdg;
  if (lower == "cnot" || lower == "cx") return GateType::CNOT;
  if (lower == "swap") return GateType::SWAP;
  fail(ErrorCode::ParseError, "unknown gate name: " + name);
}

Gate::Gate(GateType t, std::vector<int> q) : type(t), qubits(std::move(q)) {
  require(static_cast<int>(qubits.size()) == gate_arity(type),
          ErrorCode::InvalidArgument,
          "gate " + gate_name(type) + ": wrong qubit count");
  std::unordered_set<int> seen(qubits.begin(), qubits.end());
  require(seen.size() == qubits.size(), ErrorCode::InvalidArgument,
          "gate " + gate_name(type) + ": duplicate qubit");
}

}  // namespace emrekit
