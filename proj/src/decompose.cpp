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

#include "emrekit/decompose.hpp"

#include <cmath>

namespace emrekit {

namespace {

const char kPauliLetters[] = {'I', 'X', 'Y', 'Z'};

std::vector<int> pauli_digits(int index, int arity) {
  std::vector<int> digits(static_cast<size_t>(arity));
  for (int q = arity - 1; q >= 0; --q) {
    digits[static_cast<size_t>(q)] = index & 3;
    index >>= 2;
  }
  return digits;
}

std::string pauli_label(const std::vector<int>& digits) {
  std::string s;
  for (int d : digits) s.push_back(kPauliLetters[d]);
  return s;
}

// chi[i][j] = +1 if single-qubit Paulis i and j commute, else -1.
double pauli_character(int i, int j) {
  if (i == 0 || j == 0 || i == j) return 1.0;
  return -1.0;
}

double pauli_character_multi(const std::vector<int>& a, const std::vector<int>& b) {
  double c = 1.0;
  for (size_t q = 0; q < a.size(); ++q) c *= pauli_character(a[q], b[q]);
  return c;
}

}  // namespace

Matrix SignedDecomposition::reconstruct_superop() const {
  require(!terms.empty(), ErrorCode::InvalidArgument, "empty decomposition");
  Matrix acc;
  bool first = true;
  for (const auto& t : terms) {
    Matrix s = t.coefficient * superop_from_kraus(t.channel);
    if (mode == DecompMode::Emre) s = scale * s;
    if (first) {
      acc = std::move(s);
      first = false;
    } else {
      acc = acc + s;
    }
  }
  if (mode == DecompMode::Emre && residual_coefficient > 0) {
    acc = acc - residual_coefficient * residual_superop;
  }
  return acc;
}

Matrix SignedDecomposition::positive_part_superop() const {
  Matrix acc;
  bool first = true;
  for (const auto& t : terms) {
    if (t.coefficient <= 0) continue;
    Matrix s = t.coefficient * superop_from_kraus(t.channel);
    if (first) {
      acc = std::move(s);
      first = false;
    } else {
      acc = acc + s;
    }
  }
  require(!first, ErrorCode::InvalidArgument, "decomposition has no positive part");
  return acc;
}

std::vector<double> attached_ptm_diagonal(const NoiseModel& noise, int arity) {
  require(arity == 1 || arity == 2, ErrorCode::InvalidArgument,
          "supported gate arities are 1 and 2");
  if (!noise.noisy_for_arity(arity)) {
    return std::vector<double>(static_cast<size_t>(1) << (2 * arity), 1.0);
  }
  if (noise.attachment == NoiseAttachment::AfterEveryGateJoint ||
      (noise.kind == NoiseKind::DepolarizingDDim && noise.dim == (1 << arity))) {
    // Fully symmetric depolarizing on the joint space: identity component 1,
    // every other Pauli damped by (1 - p).
    require(noise.kind == NoiseKind::DepolarizingLocal ||
                noise.kind == NoiseKind::DepolarizingDDim,
            ErrorCode::NonPauliNoise, "joint noise is not Pauli diagonal");
    size_t size = static_cast<size_t>(1) << (2 * arity);
    std::vector<double> diag(size, 1.0 - noise.p);
    diag[0] = 1.0;
    return diag;
  }
  std::vector<double> single = noise_ptm_diagonal(noise);
  if (arity == 1) return single;
  std::vector<double> joint(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      joint[static_cast<size_t>(i * 4 + j)] = single[i] * single[j];
  return joint;
}

namespace {

int arity_of_unitary(const Matrix& u) {
  require(u.square() && (u.rows == 2 || u.rows == 4), ErrorCode::DimensionMismatch,
          "decompositions support one- and two-qubit unitaries");
  return u.rows == 2 ? 1 : 2;
}

}  // namespace

SignedDecomposition pec_decompose_pauli(const Gate& gate, const NoiseModel& noise) {
  return pec_decompose_pauli(gate.matrix(), noise);
}

SignedDecomposition pec_decompose_pauli(const Matrix& unitary, const NoiseModel& noise) {
  const Matrix& u = unitary;
  const int arity = arity_of_unitary(u);
  if (noise.noisy_for_arity(arity)) {
    require(noise.pauli_diagonal(), ErrorCode::NonPauliNoise,
            "quasi-probability inversion needs Pauli-diagonal noise");
  }
  std::vector<double> diag = attached_ptm_diagonal(noise, arity);
  const int size = static_cast<int>(diag.size());
  for (double e : diag) {
    require(std::abs(e) > 1e-12, ErrorCode::NonInvertibleNoise,
            "noise transfer matrix is singular; probability too large");
  }

  // Solve sum_i eta_i chi[i][j] = 1/diag[j]. The character matrix satisfies
  // chi^2 = size * I, so eta = chi * (1/diag) / size.
  std::vector<std::vector<int>> digits(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) digits[static_cast<size_t>(i)] = pauli_digits(i, arity);
  std::vector<double> eta(static_cast<size_t>(size), 0.0);
  for (int i = 0; i < size; ++i) {
    double acc = 0;
    for (int j = 0; j < size; ++j) {
      acc += pauli_character_multi(digits[static_cast<size_t>(i)],
                                   digits[static_cast<size_t>(j)]) /
             diag[static_cast<size_t>(j)];
    }
    eta[static_cast<size_t>(i)] = acc / size;
  }

  KrausChannel noise_ch = make_attached_noise(noise, arity);

  SignedDecomposition dec;
  dec.mode = DecompMode::Pec;
  double gamma = 0;
  for (int i = 0; i < size; ++i) {
    double coeff = eta[static_cast<size_t>(i)];
    if (std::abs(coeff) < 1e-15) continue;
    gamma += std::abs(coeff);
    DecompositionTerm term;
    term.coefficient = coeff;
    term.pauli_label = pauli_label(digits[static_cast<size_t>(i)]);
    Matrix correction = pauli_product(digits[static_cast<size_t>(i)]);
    term.channel = compose(noise_ch, channel_from_unitary(correction * u));
    dec.terms.push_back(std::move(term));
  }
  dec.gamma = gamma;
  dec.scale = 1.0;
  return dec;
}

double closed_form_scale_single_site(const NoiseModel& noise) {
  switch (noise.kind) {
    case NoiseKind::None:
      return 1.0;
    case NoiseKind::DepolarizingLocal:
      return 4.0 / (4.0 - 3.0 * noise.p);
    case NoiseKind::DepolarizingDDim: {
      double d2 = static_cast<double>(noise.dim) * noise.dim;
      return d2 / (d2 + noise.p - d2 * noise.p);
    }
    case NoiseKind::Dephasing:
      return 2.0 / (2.0 - noise.p);
    case NoiseKind::InhomogeneousPauli:
    case NoiseKind::ProbabilisticGeneric: {
      double q = noise.total_probability();
      require(q < 1.0, ErrorCode::NonInvertibleNoise,
              "probabilistic noise with probability 1 has no finite scale");
      return 1.0 / (1.0 - q);
    }
  }
  fail(ErrorCode::UnsupportedNoise, "unknown noise kind");
}

SignedDecomposition emre_decompose(const Gate& gate, const NoiseModel& noise,
                                   EmreMode mode) {
  return emre_decompose(gate.matrix(), noise, mode);
}

SignedDecomposition emre_decompose(const Matrix& unitary, const NoiseModel& noise,
                                   EmreMode mode) {
  const int arity = arity_of_unitary(unitary);
  if (mode == EmreMode::PositivePartOfPec) {
    SignedDecomposition pec = pec_decompose_pauli(unitary, noise);
    SignedDecomposition dec;
    dec.mode = DecompMode::Emre;
    double q_plus = 0, q_minus = 0;
    Matrix negative_superop;
    bool have_negative = false;
    for (const auto& t : pec.terms) {
      if (t.coefficient > 0) {
        q_plus += t.coefficient;
      } else {
        q_minus += -t.coefficient;
        Matrix s = (-t.coefficient) * superop_from_kraus(t.channel);
        if (!have_negative) {
          negative_superop = std::move(s);
          have_negative = true;
        } else {
          negative_superop = negative_superop + s;
        }
      }
    }
    for (const auto& t : pec.terms) {
      if (t.coefficient <= 0) continue;
      DecompositionTerm term = t;
      term.coefficient = t.coefficient / q_plus;
      dec.terms.push_back(std::move(term));
    }
    dec.scale = q_plus;
    dec.gamma = pec.gamma;
    if (have_negative && q_minus > 1e-15) {
      dec.residual_coefficient = q_minus;  // equals scale - 1
      dec.residual_superop = (1.0 / q_minus) * negative_superop;
    }
    return dec;
  }

  // ClosedForm: B is the noisy gate itself, one scale factor per noisy site.
  double s = 1.0;
  if (noise.noisy_for_arity(arity)) {
    if (noise.attachment == NoiseAttachment::AfterEveryGateJoint) {
      NoiseModel joint = NoiseModel::depolarizing_ddim(noise.p, 1 << arity);
      s = closed_form_scale_single_site(joint);
    } else if (noise.kind == NoiseKind::DepolarizingDDim) {
      require(noise.dim == (1 << arity), ErrorCode::DimensionMismatch,
              "d-dimensional depolarizing noise does not match gate arity");
      s = closed_form_scale_single_site(noise);
    } else {
      double site = closed_form_scale_single_site(noise);
      s = site;
      for (int i = 1; i < arity; ++i) s *= site;
    }
  }

  SignedDecomposition dec;
  dec.mode = DecompMode::Emre;
  DecompositionTerm term;
  term.coefficient = 1.0;
  term.pauli_label = std::string(static_cast<size_t>(arity), 'I');
  term.channel =
      compose(make_attached_noise(noise, arity), channel_from_unitary(unitary));
  dec.terms.push_back(std::move(term));
  dec.scale = s;
  dec.gamma = 1.0;
  if (s > 1.0 + 1e-15) {
    Matrix b = superop_from_kraus(dec.terms.front().channel);
    Matrix u_superop = superop_from_kraus(channel_from_unitary(unitary));
    dec.residual_coefficient = s - 1.0;
    dec.residual_superop = (1.0 / (s - 1.0)) * (s * b - u_superop);
  }
  return dec;
}

}  // namespace emrekit
