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

#include "emrekit/robustness.hpp"

#include <cmath>

namespace emrekit {

namespace {

RobustnessReport exact_report(double r_plus) {
  RobustnessReport rep;
  rep.r_plus = r_plus;
  rep.lower = r_plus;
  rep.upper = r_plus;
  rep.gamma_plus = 2.0 * r_plus + 1.0;
  rep.method = RobustnessMethod::ClosedForm;
  rep.exact = true;
  return rep;
}

RobustnessReport bound_report(double upper) {
  RobustnessReport rep;
  rep.r_plus = upper;
  rep.lower = 0.0;
  rep.upper = upper;
  rep.gamma_plus = 2.0 * upper + 1.0;
  rep.method = RobustnessMethod::CertifiedBounds;
  rep.exact = false;
  return rep;
}

}  // namespace

RobustnessReport closed_form_r_plus(const NoiseModel& noise, int n_qubits) {
  require(n_qubits >= 1, ErrorCode::InvalidArgument, "n_qubits must be >= 1");
  noise.validate();
  switch (noise.kind) {
    case NoiseKind::None:
      return exact_report(0.0);
    case NoiseKind::DepolarizingDDim: {
      double d2 = static_cast<double>(noise.dim) * noise.dim;
      return exact_report((d2 - 1.0) * noise.p / (d2 + noise.p - d2 * noise.p));
    }
    case NoiseKind::DepolarizingLocal: {
      if (n_qubits == 1) {
        // Same channel as the d = 2 depolarizing closed form.
        return exact_report(3.0 * noise.p / (4.0 - 3.0 * noise.p));
      }
      double factor = 4.0 / (4.0 - 3.0 * noise.p);
      return bound_report(std::pow(factor, n_qubits) - 1.0);
    }
    case NoiseKind::Dephasing: {
      if (n_qubits == 1) return exact_report(noise.p / (2.0 - noise.p));
      double factor = 2.0 / (2.0 - noise.p);
      return bound_report(std::pow(factor, n_qubits) - 1.0);
    }
    case NoiseKind::InhomogeneousPauli:
    case NoiseKind::ProbabilisticGeneric: {
      double q = noise.total_probability();
      require(q < 1.0, ErrorCode::UnsupportedNoise,
              "probabilistic noise with probability 1 has unbounded robustness");
      double factor = 1.0 / (1.0 - q);
      return bound_report(std::pow(factor, n_qubits) - 1.0);
    }
  }
  fail(ErrorCode::UnsupportedNoise, "unknown noise kind");
}

DecompositionBounds decomposition_robustness_bounds(const SignedDecomposition& decomp,
                                                    const Gate& gate) {
  return decomposition_robustness_bounds(decomp, gate.matrix());
}

DecompositionBounds decomposition_robustness_bounds(const SignedDecomposition& decomp,
                                                    const Matrix& unitary) {
  require(decomp.mode == DecompMode::Emre, ErrorCode::InvalidArgument,
          "bounds need a generalized (Emre-mode) decomposition");
  const int d = unitary.rows;
  Matrix b_superop = decomp.positive_part_superop();
  Matrix u_dag_superop = superop_from_kraus(channel_from_unitary(dagger(unitary)));
  Matrix e_prime = decomp.scale * (b_superop * u_dag_superop);
  ChoiMatrix j = choi_from_superop(e_prime, d, d);
  Matrix phi = maximally_entangled_projector(d);
  double overlap = trace(phi * j.matrix).real();

  DecompositionBounds out;
  out.upper = decomp.scale - 1.0;
  out.lower_raw = overlap / (static_cast<double>(d) * d * decomp.scale);
  out.lower = out.lower_raw - 1.0;
  return out;
}

Matrix canonical_dual_certificate(const NoiseModel& noise, const Gate& gate) {
  return canonical_dual_certificate(noise, gate.matrix());
}

Matrix canonical_dual_certificate(const NoiseModel& noise, const Matrix& unitary) {
  const int d = unitary.rows;
  ChoiMatrix ju = kraus_to_choi(channel_from_unitary(unitary));
  double denom;
  if (noise.kind == NoiseKind::None || noise.p == 0.0) {
    denom = static_cast<double>(d) * d;
  } else if (noise.kind == NoiseKind::Dephasing) {
    require(d == 2, ErrorCode::UnsupportedNoise,
            "dephasing certificate is single-qubit");
    denom = 2.0 * (2.0 - noise.p);
  } else if (noise.kind == NoiseKind::DepolarizingDDim ||
             noise.kind == NoiseKind::DepolarizingLocal) {
    double dd = (noise.kind == NoiseKind::DepolarizingDDim)
                    ? static_cast<double>(noise.dim)
                    : 2.0;
    require(static_cast<int>(dd) == d, ErrorCode::DimensionMismatch,
            "certificate dimension does not match the gate");
    denom = dd * dd + noise.p - dd * dd * noise.p;
  } else {
    fail(ErrorCode::UnsupportedNoise,
         "no closed-form dual certificate for this noise model");
  }
  return (1.0 / denom) * ju.matrix;
}

CertificateReport dual_certificate_check(const NoiseModel& noise, const Gate& gate,
                                         const Matrix& beta, int samples,
                                         std::uint64_t seed) {
  return dual_certificate_check(noise, gate.matrix(), beta, samples, seed);
}

CertificateReport dual_certificate_check(const NoiseModel& noise, const Matrix& unitary,
                                         const Matrix& beta, int samples,
                                         std::uint64_t seed) {
  const int d = unitary.rows;
  const int arity = d == 2 ? 1 : 2;
  require(d == 2 || d == 4, ErrorCode::DimensionMismatch,
          "certificates support one- and two-qubit unitaries");
  require(beta.rows == d * d && beta.square(), ErrorCode::DimensionMismatch,
          "certificate has the wrong shape");
  require(is_hermitian(beta, numeric_tolerance()), ErrorCode::InvalidArgument,
          "certificate must be Hermitian");
  {
    auto evals = hermitian_eigenvalues(beta);
    require(evals.empty() || evals.front() >= -numeric_tolerance(),
            ErrorCode::InvalidArgument, "certificate must be PSD");
  }

  KrausChannel noise_ch = make_attached_noise(noise, arity);
  auto constraint_value = [&](const KrausChannel& w) {
    ChoiMatrix jy = kraus_to_choi(compose(noise_ch, w));
    return trace(jy.matrix * beta).real();
  };

  CertificateReport rep;
  rep.min_constraint = 1e300;
  rep.max_constraint = -1e300;
  auto absorb = [&](double v) {
    rep.min_constraint = std::min(rep.min_constraint, v);
    rep.max_constraint = std::max(rep.max_constraint, v);
  };

  // Extremal candidates from the closed-form proofs: the gate itself, the
  // identity, and every Pauli correction of the gate.
  const Matrix& u = unitary;
  absorb(constraint_value(channel_from_unitary(u)));
  absorb(constraint_value(channel_from_unitary(Matrix::identity(d))));
  const int n_paulis = 1 << (2 * arity);
  for (int i = 1; i < n_paulis; ++i) {
    std::vector<int> digits(static_cast<size_t>(arity));
    int v = i;
    for (int q = arity - 1; q >= 0; --q) {
      digits[static_cast<size_t>(q)] = v & 3;
      v >>= 2;
    }
    absorb(constraint_value(channel_from_unitary(pauli_product(digits) * u)));
  }

  RngStream rng = RngStream::derive(seed, {0xce27});
  for (int i = 0; i < samples; ++i) {
    absorb(constraint_value(random_cptp(d, d, rng)));
  }
  rep.samples = samples;

  const double slack = 1e-8;
  require(rep.max_constraint <= 1.0 + slack, ErrorCode::InfeasibleCertificate,
          "certificate violates an implementable constraint");
  require(rep.min_constraint >= -slack, ErrorCode::InfeasibleCertificate,
          "certificate violates positivity of a constraint");
  rep.feasible = true;

  ChoiMatrix ju = kraus_to_choi(channel_from_unitary(unitary));
  rep.certified_lower = trace(ju.matrix * beta).real() - 1.0;
  return rep;
}

}  // namespace emrekit
