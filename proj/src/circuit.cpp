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

#include "emrekit/circuit.hpp"

#include <algorithm>

#include <json.hpp>

namespace emrekit {

PauliString::PauliString(std::string s) : letters(std::move(s)) {
  for (char c : letters) {
    require(c == 'I' || c == 'X' || c == 'Y' || c == 'Z',
            ErrorCode::InvalidArgument,
            "Pauli string may only contain I, X, Y, Z");
  }
}

PauliString PauliString::z_on(int qubit, int n_qubits) {
  require(qubit >= 0 && qubit < n_qubits, ErrorCode::InvalidArgument,
          "observable qubit out of range");
  std::string s(static_cast<size_t>(n_qubits), 'I');
  s[static_cast<size_t>(qubit)] = 'Z';
  return PauliString(s);
}

void CircuitIR::validate() const {
  require(n_qubits >= 1 && n_qubits <= kMaxQubits, ErrorCode::InvalidArgument,
          "register size must be between 1 and 10 qubits");
  require(observable.n_qubits() == n_qubits, ErrorCode::DimensionMismatch,
          "observable length must match the register");
  require(input_basis_state < (std::uint64_t{1} << n_qubits),
          ErrorCode::InvalidArgument, "input basis state out of range");
  for (const auto& g : gates) {
    for (int q : g.qubits) {
      require(q >= 0 && q < n_qubits, ErrorCode::InvalidArgument,
              "gate qubit index out of range");
    }
  }
  noise.validate();
}

int CircuitIR::count_gates(GateType type) const {
  return static_cast<int>(std::count_if(
      gates.begin(), gates.end(),
      [type](const Gate& g) { return g.type == type; }));
}

namespace {

// Textbook Toffoli over {H, T, Tdg, CNOT}: 15 gates, 6 of them CNOTs.
void append_toffoli(std::vector<Gate>& gates, int c1, int c2, int target) {
  using GT = GateType;
  gates.emplace_back(GT::H, std::vector<int>{target});
  gates.emplace_back(GT::CNOT, std::vector<int>{c2, target});
  gates.emplace_back(GT::Tdg, std::vector<int>{target});
  gates.emplace_back(GT::CNOT, std::vector<int>{c1, target});
  gates.emplace_back(GT::T, std::vector<int>{target});
  gates.emplace_back(GT::CNOT, std::vector<int>{c2, target});
  gates.emplace_back(GT::Tdg, std::vector<int>{target});
  gates.emplace_back(GT::CNOT, std::vector<int>{c1, target});
  gates.emplace_back(GT::T, std::vector<int>{c2});
  gates.emplace_back(GT::T, std::vector<int>{target});
  gates.emplace_back(GT::H, std::vector<int>{target});
  gates.emplace_back(GT::CNOT, std::vector<int>{c1, c2});
  gates.emplace_back(GT::T, std::vector<int>{c1});
  gates.emplace_back(GT::Tdg, std::vector<int>{c2});
  gates.emplace_back(GT::CNOT, std::vector<int>{c1, c2});
}

// Controlled swap of (a, b) as the controlled XOR swap: each of the three
// CNOTs becomes a Toffoli. 45 gates per controlled swap.
void append_controlled_swap(std::vector<Gate>& gates, int control, int a, int b) {
  append_toffoli(gates, control, b, a);
  append_toffoli(gates, control, a, b);
  append_toffoli(gates, control, b, a);
}

}  // namespace

CircuitIR build_swap_test_circuit(bool both_registers_ghz) {
  using GT = GateType;
  CircuitIR c;
  c.n_qubits = 7;
  c.observable = PauliString::z_on(0, 7);

  // GHZ preparation on qubits 1-3.
  c.gates.emplace_back(GT::H, std::vector<int>{1});
  c.gates.emplace_back(GT::CNOT, std::vector<int>{1, 2});
  c.gates.emplace_back(GT::CNOT, std::vector<int>{2, 3});
  if (both_registers_ghz) {
    c.gates.emplace_back(GT::H, std::vector<int>{4});
    c.gates.emplace_back(GT::CNOT, std::vector<int>{4, 5});
    c.gates.emplace_back(GT::CNOT, std::vector<int>{5, 6});
  }

  c.gates.emplace_back(GT::H, std::vector<int>{0});
  for (int i = 0; i < 3; ++i) {
    append_controlled_swap(c.gates, 0, 1 + i, 4 + i);
  }
  c.gates.emplace_back(GT::H, std::vector<int>{0});

  c.validate();
  return c;
}

CircuitIR circuit_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("circuit JSON: ") + e.what());
  }
  try {
    require(j.is_object(), ErrorCode::ParseError,
            "circuit JSON: top level must be an object");
    require(j.contains("n_qubits") && j["n_qubits"].is_number_integer(),
            ErrorCode::ParseError, "circuit JSON: field 'n_qubits' (int) required");
    CircuitIR c;
    c.n_qubits = j["n_qubits"].get<int>();
    require(j.contains("gates") && j["gates"].is_array(), ErrorCode::ParseError,
            "circuit JSON: field 'gates' (array) required");
    for (size_t idx = 0; idx < j["gates"].size(); ++idx) {
      const auto& g = j["gates"][idx];
      std::string at = "gates[" + std::to_string(idx) + "]";
      require(g.is_object() && g.contains("name") && g["name"].is_string(),
              ErrorCode::ParseError,
              "circuit JSON: field '" + at + ".name' (string) required");
      require(g.contains("qubits") && g["qubits"].is_array(),
              ErrorCode::ParseError,
              "circuit JSON: field '" + at + ".qubits' (array) required");
      std::vector<int> qubits;
      for (const auto& q : g["qubits"]) {
        require(q.is_number_integer(), ErrorCode::ParseError,
                "circuit JSON: field '" + at + ".qubits' must hold integers");
        qubits.push_back(q.get<int>());
      }
      c.gates.emplace_back(gate_from_name(g["name"].get<std::string>()),
                           std::move(qubits));
    }
    if (j.contains("observable")) {
      require(j["observable"].is_string(), ErrorCode::ParseError,
              "circuit JSON: field 'observable' must be a string");
      c.observable = PauliString(j["observable"].get<std::string>());
    } else {
      c.observable = PauliString::z_on(0, c.n_qubits);
    }
    if (j.contains("input")) {
      require(j["input"].is_string(), ErrorCode::ParseError,
              "circuit JSON: field 'input' must be a bit string");
      const std::string& bits = j["input"].get<std::string>();
      require(static_cast<int>(bits.size()) == c.n_qubits, ErrorCode::ParseError,
              "circuit JSON: field 'input' must have one bit per qubit");
      std::uint64_t state = 0;
      for (char b : bits) {
        require(b == '0' || b == '1', ErrorCode::ParseError,
                "circuit JSON: field 'input' must be a bit string");
        state = (state << 1) | static_cast<std::uint64_t>(b - '0');
      }
      c.input_basis_state = state;
    }
    c.validate();
    return c;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("circuit JSON: ") + e.what());
  }
}

CircuitIR random_circuit(int n_qubits, int n_gates, RngStream& rng) {
  static const GateType kPool[] = {GateType::H, GateType::X,   GateType::Y,
                                   GateType::Z, GateType::S,   GateType::T,
                                   GateType::Tdg, GateType::CNOT};
  CircuitIR c;
  c.n_qubits = n_qubits;
  c.observable = PauliString::z_on(0, n_qubits);
  for (int i = 0; i < n_gates; ++i) {
    size_t pick = static_cast<size_t>(rng.next_double() * 8);
    if (pick >= 8) pick = 7;
    GateType t = kPool[pick];
    if (gate_arity(t) == 2 && n_qubits < 2) t = GateType::H;
    if (gate_arity(t) == 1) {
      int q = static_cast<int>(rng.next_double() * n_qubits) % n_qubits;
      c.gates.emplace_back(t, std::vector<int>{q});
    } else {
      int a = static_cast<int>(rng.next_double() * n_qubits) % n_qubits;
      int b = static_cast<int>(rng.next_double() * (n_qubits - 1)) % (n_qubits - 1);
      if (b >= a) ++b;
      c.gates.emplace_back(t, std::vector<int>{a, b});
    }
  }
  c.validate();
  return c;
}

}  // namespace emrekit
