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

#ifndef EMREKIT_CHANNEL_HPP_
#define EMREKIT_CHANNEL_HPP_

#include <string>
#include <vector>

#include "emrekit/matrix.hpp"

namespace emrekit {

// Representation conventions used throughout:
//  * density matrices are vectorized row-major: vec(rho)[i*d + j] = rho(i, j);
//  * the superoperator of a Kraus set {K} is  S = sum_K  K (x) conj(K),
//    acting on row-major vec;
//  * the Choi matrix is J = (id (x) E)(Phi+), with the UNNORMALIZED
//    maximally entangled projector Phi+ = sum_ij |ii><jj|  (Tr Phi+ = d),
//    input system first. For trace-preserving maps Tr J = dim_in.

// Completely positive map given by Kraus operators (shared shape
// dim_out x dim_in).
struct KrausChannel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<Matrix> ops;

  KrausChannel() = default;
  explicit KrausChannel(std::vector<Matrix> kraus_ops);

  Matrix apply(const Matrix& rho) const;
  // Max-abs deviation of sum_K K^dag K from the identity.
  double completeness_defect() const;
};

// Single unitary conjugation as a channel.
KrausChannel channel_from_unitary(const Matrix& u);

// Sequential composition: first `a`, then `b` (Kraus products).
KrausChannel compose(const KrausChannel& b, const KrausChannel& a);

// Tensor product of channels (first factor on the most significant index).
KrausChannel channel_kron(const KrausChannel& x, const KrausChannel& y);

struct ChoiMatrix {
  int dim_in = 0;
  int dim_out = 0;
  Matrix matrix;  // (dim_in*dim_out) x (dim_in*dim_out)

  bool is_hermitian(double tol) const;
  // Minimum eigenvalue >= -tol.
  bool is_completely_positive(double tol) const;
  // Partial trace over the output equals the identity on the input.
  bool is_trace_preserving(double tol) const;
  void validate(double tol) const;
};

// Phi+ projector (unnormalized, trace d).
Matrix maximally_entangled_projector(int d);

// Choi matrix of a Kraus set; throws CompletenessViolation when the set is
// not trace preserving within tolerance.
ChoiMatrix kraus_to_choi(const std::vector<Matrix>& kraus, int dim_in);
ChoiMatrix kraus_to_choi(const KrausChannel& ch);

// Independent route: build the Choi matrix by reshuffling the superoperator.
ChoiMatrix choi_from_superop(const Matrix& superop, int dim_in, int dim_out);

Matrix superop_from_kraus(const std::vector<Matrix>& kraus);
Matrix superop_from_kraus(const KrausChannel& ch);
Matrix superop_from_choi(const ChoiMatrix& choi);

// Applies a channel through its Choi matrix: Tr_in[(rho^T (x) I) J].
Matrix choi_apply(const ChoiMatrix& choi, const Matrix& rho);

// Kraus operators recovered from the eigendecomposition of the Choi matrix.
std::vector<Matrix> choi_to_kraus(const ChoiMatrix& choi, double cutoff = 1e-12);

// Partial traces of a Choi matrix.
Matrix choi_trace_out_output(const ChoiMatrix& choi);  // dim_in x dim_in
Matrix choi_trace_out_input(const ChoiMatrix& choi);   // dim_out x dim_out

// Single-qubit Pauli matrices, index 0..3 = I, X, Y, Z.
const Matrix& pauli(int index);
// n-qubit Pauli product for base-4 digit string (most significant first).
Matrix pauli_product(const std::vector<int>& digits);

// Pauli transfer matrix of an n-qubit channel: R[i][j] = Tr[P_i E(P_j)] / 2^n.
// Real for any Hermiticity-preserving map; diagonal for Pauli channels.
Matrix ptm_from_kraus(const std::vector<Matrix>& kraus);

// Haar-ish random CPTP channel on dimension d via a Stinespring isometry with
// environment dimension d_env (QR of a Gaussian matrix).
KrausChannel random_cptp(int d, int d_env, RngStream& rng);

// Haar random unitary of dimension d.
Matrix random_unitary(int d, RngStream& rng);

}  // namespace emrekit

#endif  // EMREKIT_CHANNEL_HPP_
