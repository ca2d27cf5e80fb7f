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

#include <doctest.h>

#include <cmath>

#include "emrekit/estimators.hpp"

using namespace emrekit;

namespace {

double coefficient_sum(const SignedDecomposition& d) {
  double s = 0;
  for (const auto& t : d.terms) s += t.coefficient;
  return s;
}

KrausChannel amplitude_damping(double g) {
  Matrix k0{{1, 0}, {0, std::sqrt(1 - g)}};
  Matrix k1{{0, std::sqrt(g)}, {0, 0}};
  return KrausChannel({k0, k1});
}

}  // namespace

TEST_CASE("noiseless quasi-probability decomposition is a single unit term") {
  Gate h(GateType::H, {0});
  SignedDecomposition d = pec_decompose_pauli(h, NoiseModel::dephasing(0.0));
  CHECK(d.terms.size() == 1);
  CHECK(d.terms[0].coefficient == doctest::Approx(1.0));
  CHECK(d.gamma == doctest::Approx(1.0));
}

TEST_CASE("dephasing inversion uses only I and Z corrections") {
  double p = 0.1;
  Gate h(GateType::H, {0});
  SignedDecomposition d = pec_decompose_pauli(h, NoiseModel::dephasing(p));
  CHECK(d.terms.size() == 2);
  CHECK(d.terms[0].pauli_label == "I");
  CHECK(d.terms[1].pauli_label == "Z");
  CHECK(coefficient_sum(d) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.gamma == doctest::Approx(1.0 / (1.0 - p)).epsilon(1e-12));

  // Linear-solve oracle: the transfer matrix of sum_i eta_i (E o P_i) must be
  // the identity, i.e. the inversion really undoes the noise.
  KrausChannel noise = make_noise_channel(NoiseModel::dephasing(p));
  Matrix acc(4, 4);
  for (const auto& t : d.terms) {
    Matrix p_mat = t.pauli_label == "I" ? pauli(0) : pauli(3);
    acc = acc + t.coefficient *
                    ptm_from_kraus(compose(noise, channel_from_unitary(p_mat)).ops);
  }
  CHECK(max_abs_diff(acc, Matrix::identity(4)) < 1e-10);
}

TEST_CASE("quasi-probability decompositions reconstruct the ideal gate") {
  std::vector<NoiseModel> models = {
      NoiseModel::depolarizing_local(0.01), NoiseModel::dephasing(0.1),
      NoiseModel::inhomogeneous_pauli(0.002, 0.004, 0.004)};
  std::vector<Gate> gates = {Gate(GateType::H, {0}), Gate(GateType::T, {0}),
                             Gate(GateType::CNOT, {0, 1})};
  for (const auto& m : models) {
    for (const auto& g : gates) {
      SignedDecomposition d = pec_decompose_pauli(g, m);
      CHECK(coefficient_sum(d) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(d.gamma >= 1.0);
      Matrix target = superop_from_kraus(ideal_gate_channel(g));
      CHECK(max_abs_diff(d.reconstruct_superop(), target) < 1e-10);
    }
  }
}

TEST_CASE("overhead grows with noise and tends to one as it vanishes") {
  Gate h(GateType::H, {0});
  double gamma_small =
      pec_decompose_pauli(h, NoiseModel::depolarizing_local(1e-6)).gamma;
  double gamma_large =
      pec_decompose_pauli(h, NoiseModel::depolarizing_local(0.01)).gamma;
  CHECK(gamma_large > 1.0);
  CHECK(gamma_small > 1.0);
  CHECK(gamma_small < 1.0 + 1e-4);
  CHECK(gamma_large > gamma_small);
}

TEST_CASE("two-qubit inversion overhead is the product of the per-qubit ones") {
  double p = 0.01;
  NoiseModel m = NoiseModel::depolarizing_local(p);
  double g1 = pec_decompose_pauli(Gate(GateType::H, {0}), m).gamma;
  double g2 = pec_decompose_pauli(Gate(GateType::CNOT, {0, 1}), m).gamma;
  CHECK(g2 == doctest::Approx(g1 * g1).epsilon(1e-10));
}

TEST_CASE("non-invertible and non-Pauli noise are rejected") {
  Gate h(GateType::H, {0});
  CHECK_THROWS_AS(pec_decompose_pauli(h, NoiseModel::dephasing(1.0)), Error);
  NoiseModel generic = NoiseModel::probabilistic_generic(0.3, amplitude_damping(0.2));
  try {
    pec_decompose_pauli(h, generic);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPauliNoise);
  }
}

TEST_CASE("closed-form scale for dephasing") {
  Gate h(GateType::H, {0});
  SignedDecomposition d =
      emre_decompose(h, NoiseModel::dephasing(0.1), EmreMode::ClosedForm);
  CHECK(d.scale == doctest::Approx(1.0 + 0.1 / 1.9).epsilon(1e-9));
  CHECK(d.terms.size() == 1);
}

TEST_CASE("closed-form scale for two-dimensional depolarizing") {
  Gate h(GateType::H, {0});
  SignedDecomposition d = emre_decompose(h, NoiseModel::depolarizing_ddim(0.01, 2),
                                         EmreMode::ClosedForm);
  CHECK(d.scale == doctest::Approx(4.0 / 3.97).epsilon(1e-9));
}

TEST_CASE("noiseless generalized decomposition is trivial") {
  Gate t(GateType::T, {0});
  for (EmreMode mode : {EmreMode::ClosedForm, EmreMode::PositivePartOfPec}) {
    SignedDecomposition d = emre_decompose(t, NoiseModel::dephasing(0.0), mode);
    CHECK(d.scale == doctest::Approx(1.0));
    CHECK(d.residual_coefficient == doctest::Approx(0.0));
    CHECK(d.terms.size() == 1);
    CHECK(max_abs_diff(superop_from_kraus(d.terms[0].channel),
                       superop_from_kraus(ideal_gate_channel(t))) < 1e-12);
  }
}

TEST_CASE("generalized decompositions reconstruct the ideal gate") {
  std::vector<NoiseModel> models = {
      NoiseModel::depolarizing_local(0.02), NoiseModel::dephasing(0.15),
      NoiseModel::inhomogeneous_pauli(0.003, 0.001, 0.002)};
  std::vector<Gate> gates = {Gate(GateType::H, {0}), Gate(GateType::CNOT, {0, 1})};
  for (const auto& m : models) {
    for (const auto& g : gates) {
      for (EmreMode mode : {EmreMode::ClosedForm, EmreMode::PositivePartOfPec}) {
        SignedDecomposition d = emre_decompose(g, m, mode);
        CHECK(d.scale >= 1.0);
        double wsum = 0;
        for (const auto& t : d.terms) {
          CHECK(t.coefficient > 0);
          wsum += t.coefficient;
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
        Matrix target = superop_from_kraus(ideal_gate_channel(g));
        CHECK(max_abs_diff(d.reconstruct_superop(), target) < 1e-8);
      }
    }
  }
}

TEST_CASE("generalized residuals are CPTP channels") {
  std::vector<NoiseModel> models = {NoiseModel::depolarizing_local(0.05),
                                    NoiseModel::dephasing(0.2),
                                    NoiseModel::inhomogeneous_pauli(0.01, 0.02, 0.03)};
  std::vector<Gate> gates = {Gate(GateType::H, {0}), Gate(GateType::CNOT, {0, 1})};
  for (const auto& m : models) {
    for (const auto& g : gates) {
      for (EmreMode mode : {EmreMode::ClosedForm, EmreMode::PositivePartOfPec}) {
        SignedDecomposition d = emre_decompose(g, m, mode);
        REQUIRE(d.residual_coefficient > 0);
        int dim = 1 << g.arity();
        ChoiMatrix j = choi_from_superop(d.residual_superop, dim, dim);
        CHECK(j.is_hermitian(1e-8));
        CHECK(j.is_completely_positive(1e-8));
        CHECK(j.is_trace_preserving(1e-8));
      }
    }
  }
}

TEST_CASE("positive part scale is (gamma + 1) / 2") {
  std::vector<NoiseModel> models = {NoiseModel::depolarizing_local(0.03),
                                    NoiseModel::dephasing(0.25),
                                    NoiseModel::inhomogeneous_pauli(0.004, 0.002, 0.01)};
  for (const auto& m : models) {
    for (const Gate& g : {Gate(GateType::H, {0}), Gate(GateType::CNOT, {0, 1})}) {
      SignedDecomposition pec = pec_decompose_pauli(g, m);
      SignedDecomposition pos = emre_decompose(g, m, EmreMode::PositivePartOfPec);
      CHECK(pos.scale == doctest::Approx((pec.gamma + 1.0) / 2.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("two-qubit closed-form scale multiplies per-site factors") {
  double p = 0.02;
  Gate cnot(GateType::CNOT, {0, 1});
  SignedDecomposition d =
      emre_decompose(cnot, NoiseModel::depolarizing_local(p), EmreMode::ClosedForm);
  double site = 4.0 / (4.0 - 3.0 * p);
  CHECK(d.scale == doctest::Approx(site * site).epsilon(1e-12));
}

TEST_CASE("unmitigated gate classes decompose trivially") {
  NoiseModel m = NoiseModel::depolarizing_local(0.01);
  m.mitigate_two = false;
  CircuitIR c;
  c.n_qubits = 2;
  c.observable = PauliString("ZI");
  c.gates.emplace_back(GateType::H, std::vector<int>{0});
  c.gates.emplace_back(GateType::CNOT, std::vector<int>{0, 1});
  c.noise = m;
  auto infos = decompose_circuit(c, EmreMode::ClosedForm);
  CHECK(infos[0].mitigable);
  CHECK_FALSE(infos[1].mitigable);
  CHECK(infos[1].s == doctest::Approx(1.0));
  CHECK(infos[1].gamma == doctest::Approx(1.0));
}
