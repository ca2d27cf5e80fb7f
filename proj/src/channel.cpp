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

#include "emrekit/channel.hpp"

#include <cmath>

namespace emrekit {

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops) : ops(std::move(kraus_ops)) {
  require(!ops.empty(), ErrorCode::InvalidArgument, "empty Kraus set");
  dim_out = ops.front().rows;
  dim_in = ops.front().cols;
  for (const auto& k : ops) {
    require(k.rows == dim_out && k.cols == dim_in, ErrorCode::DimensionMismatch,
            "Kraus operators must share one shape");
  }
}

Matrix KrausChannel::apply(const Matrix& rho) const {
  require(rho.rows == dim_in && rho.cols == dim_in, ErrorCode::DimensionMismatch,
          "KrausChannel::apply: state dimension mismatch");
  Matrix out(dim_out, dim_out);
  for (const auto& k : ops) out = out + k * rho * dagger(k);
  return out;
}

double KrausChannel::completeness_defect() const {
  Matrix acc(dim_in, dim_in);
  for (const auto& k : ops) acc = acc + dagger(k) * k;
  return max_abs_diff(acc, Matrix::identity(dim_in));
}

KrausChannel channel_from_unitary(const Matrix& u) {
  require(u.square(), ErrorCode::DimensionMismatch, "unitary must be square");
  return KrausChannel({u});
}

KrausChannel compose(const KrausChannel& b, const KrausChannel& a) {
  require(a.dim_out == b.dim_in, ErrorCode::DimensionMismatch,
          "compose: dimension mismatch");
  std::vector<Matrix> ops;
  ops.reserve(a.ops.size() * b.ops.size());
  for (const auto& kb : b.ops)
    for (const auto& ka : a.ops) ops.push_back(kb * ka);
  return KrausChannel(std::move(ops));
}

KrausChannel channel_kron(const KrausChannel& x, const KrausChannel& y) {
  std::vector<Matrix> ops;
  ops.reserve(x.ops.size() * y.ops.size());
  for (const auto& kx : x.ops)
    for (const auto& ky : y.ops) ops.push_back(kron(kx, ky));
  return KrausChannel(std::move(ops));
}

bool ChoiMatrix::is_hermitian(double tol) const {
  return emrekit::is_hermitian(matrix, tol);
}

bool ChoiMatrix::is_completely_positive(double tol) const {
  auto evals = hermitian_eigenvalues(matrix);
  return evals.empty() || evals.front() >= -tol;
}

bool ChoiMatrix::is_trace_preserving(double tol) const {
  Matrix reduced = choi_trace_out_output(*this);
  return max_abs_diff(reduced, Matrix::identity(dim_in)) <= tol;
}

void ChoiMatrix::validate(double tol) const {
  require(matrix.rows == dim_in * dim_out && matrix.square(),
          ErrorCode::DimensionMismatch, "Choi matrix has wrong shape");
  require(is_hermitian(tol), ErrorCode::InvalidArgument,
          "Choi matrix is not Hermitian");
  require(is_completely_positive(tol), ErrorCode::InvalidArgument,
          "Choi matrix is not completely positive");
  require(is_trace_preserving(tol), ErrorCode::InvalidArgument,
          "Choi matrix is not trace preserving");
}

Matrix maximally_entangled_projector(int d) {
  Matrix phi(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) phi(i * d + i, j * d + j) = 1.0;
  return phi;
}

ChoiMatrix kraus_to_choi(const std::vector<Matrix>& kraus, int dim_in) {
  require(!kraus.empty(), ErrorCode::InvalidArgument, "empty Kraus set");
  KrausChannel ch(kraus);
  require(ch.dim_in == dim_in, ErrorCode::DimensionMismatch,
          "kraus_to_choi: dim_in mismatch");
  require(ch.completeness_defect() <= numeric_tolerance(),
          ErrorCode::CompletenessViolation,
          "Kraus set is not trace preserving within tolerance");
  return kraus_to_choi(ch);
}

ChoiMatrix kraus_to_choi(const KrausChannel& ch) {
  const int din = ch.dim_in;
  const int dout = ch.dim_out;
  ChoiMatrix out;
  out.dim_in = din;
  out.dim_out = dout;
  out.matrix = Matrix(din * dout, din * dout);
  // J = sum_ij |i><j| (x) E(|i><j|); column k of a Kraus operator gives
  // the vector (id (x) K)|phi+> directly.
  for (const auto& k : ch.ops) {
    std::vector<cplx> w(static_cast<size_t>(din) * dout);
    for (int i = 0; i < din; ++i)
      for (int m = 0; m < dout; ++m) w[static_cast<size_t>(i) * dout + m] = k(m, i);
    for (size_t r = 0; r < w.size(); ++r) {
      if (w[r] == cplx(0, 0)) continue;
      for (size_t c = 0; c < w.size(); ++c)
        out.matrix(static_cast<int>(r), static_cast<int>(c)) +=
            w[r] * std::conj(w[c]);
    }
  }
  return out;
}

ChoiMatrix choi_from_superop(const Matrix& superop, int dim_in, int dim_out) {
  require(superop.rows == dim_out * dim_out && superop.cols == dim_in * dim_in,
          ErrorCode::DimensionMismatch, "choi_from_superop: shape mismatch");
  ChoiMatrix out;
  out.dim_in = dim_in;
  out.dim_out = dim_out;
  out.matrix = Matrix(dim_in * dim_out, dim_in * dim_out);
  // J[(i,m),(j,n)] = E(|i><j|)[m,n] = S[(m,n),(i,j)]
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j)
      for (int m = 0; m < dim_out; ++m)
        for (int n = 0; n < dim_out; ++n)
          out.matrix(i * dim_out + m, j * dim_out + n) =
              superop(m * dim_out + n, i * dim_in + j);
  return out;
}

Matrix superop_from_kraus(const std::vector<Matrix>& kraus) {
  require(!kraus.empty(), ErrorCode::InvalidArgument, "empty Kraus set");
  Matrix s(kraus.front().rows * kraus.front().rows,
           kraus.front().cols * kraus.front().cols);
  for (const auto& k : kraus) s = s + kron(k, conjugated(k));
  return s;
}

Matrix superop_from_kraus(const KrausChannel& ch) { return superop_from_kraus(ch.ops); }

Matrix superop_from_choi(const ChoiMatrix& choi) {
  Matrix s(choi.dim_out * choi.dim_out, choi.dim_in * choi.dim_in);
  for (int i = 0; i < choi.dim_in; ++i)
    for (int j = 0; j < choi.dim_in; ++j)
      for (int m = 0; m < choi.dim_out; ++m)
        for (int n = 0; n < choi.dim_out; ++n)
          s(m * choi.dim_out + n, i * choi.dim_in + j) =
              choi.matrix(i * choi.dim_out + m, j * choi.dim_out + n);
  return s;
}

Matrix choi_apply(const ChoiMatrix& choi, const Matrix& rho) {
  require(rho.rows == choi.dim_in && rho.cols == choi.dim_in,
          ErrorCode::DimensionMismatch, "choi_apply: state dimension mismatch");
  const int din = choi.dim_in;
  const int dout = choi.dim_out;
  Matrix out(dout, dout);
  // Tr_in[(rho^T (x) I) J] = sum_ij rho(i,j) E(|i><j|)
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      cplx r = rho(i, j);
      if (r == cplx(0, 0)) continue;
      for (int m = 0; m < dout; ++m)
        for (int n = 0; n < dout; ++n)
          out(m, n) += r * choi.matrix(i * dout + m, j * dout + n);
    }
  return out;
}

std::vector<Matrix> choi_to_kraus(const ChoiMatrix& choi, double cutoff) {
  std::vector<double> evals;
  Matrix evecs;
  eigen_hermitian(choi.matrix, evals, evecs);
  std::vector<Matrix> kraus;
  for (size_t idx = 0; idx < evals.size(); ++idx) {
    double w = evals[idx];
    require(w >= -numeric_tolerance(), ErrorCode::InvalidArgument,
            "choi_to_kraus: Choi matrix is not PSD");
    if (w <= cutoff) continue;
    double scale = std::sqrt(w);
    Matrix k(choi.dim_out, choi.dim_in);
    for (int i = 0; i < choi.dim_in; ++i)
      for (int m = 0; m < choi.dim_out; ++m)
        k(m, i) = scale * evecs(i * choi.dim_out + m, static_cast<int>(idx));
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(Matrix(choi.dim_out, choi.dim_in));
  return kraus;
}

Matrix choi_trace_out_output(const ChoiMatrix& choi) {
  Matrix out(choi.dim_in, choi.dim_in);
  for (int i = 0; i < choi.dim_in; ++i)
    for (int j = 0; j < choi.dim_in; ++j) {
      cplx acc = 0;
      for (int m = 0; m < choi.dim_out; ++m)
        acc += choi.matrix(i * choi.dim_out + m, j * choi.dim_out + m);
      out(i, j) = acc;
    }
  return out;
}

Matrix choi_trace_out_input(const ChoiMatrix& choi) {
  Matrix out(choi.dim_out, choi.dim_out);
  for (int m = 0; m < choi.dim_out; ++m)
    for (int n = 0; n < choi.dim_out; ++n) {
      cplx acc = 0;
      for (int i = 0; i < choi.dim_in; ++i)
        acc += choi.matrix(i * choi.dim_out + m, i * choi.dim_out + n);
      out(m, n) = acc;
    }
  return out;
}

const Matrix& pauli(int index) {
  static const Matrix p[4] = {
      Matrix{{1, 0}, {0, 1}},
      Matrix{{0, 1}, {1, 0}},
      Matrix{{0, cplx(0, -1)}, {cplx(0, 1), 0}},
      Matrix{{1, 0}, {0, -1}},
  };
  require(index >= 0 && index < 4, ErrorCode::InvalidArgument, "Pauli index");
  return p[index];
}

Matrix pauli_product(const std::vector<int>& digits) {
  require(!digits.empty(), ErrorCode::InvalidArgument, "empty Pauli product");
  Matrix out = pauli(digits[0]);
  for (size_t i = 1; i < digits.size(); ++i) out = kron(out, pauli(digits[i]));
  return out;
}

Matrix ptm_from_kraus(const std::vector<Matrix>& kraus) {
  require(!kraus.empty(), ErrorCode::InvalidArgument, "empty Kraus set");
  int d = kraus.front().rows;
  require(d == kraus.front().cols, ErrorCode::DimensionMismatch,
          "PTM requires a square channel");
  int n = 0;
  while ((1 << n) < d) ++n;
  require((1 << n) == d, ErrorCode::DimensionMismatch,
          "PTM requires qubit dimensions");
  int size = 1;
  for (int i = 0; i < n; ++i) size *= 4;

  KrausChannel ch(kraus);
  Matrix r(size, size);
  std::vector<int> digits(static_cast<size_t>(n));
  auto basis_matrix = [&](int idx) {
    int v = idx;
    for (int q = n - 1; q >= 0; --q) {
      digits[static_cast<size_t>(q)] = v & 3;
      v >>= 2;
    }
    return pauli_product(digits);
  };
  for (int j = 0; j < size; ++j) {
    Matrix image = ch.apply(basis_matrix(j));
    for (int i = 0; i < size; ++i) {
      cplx val = trace(basis_matrix(i) * image) / static_cast<double>(d);
      r(i, j) = val.real();
    }
  }
  return r;
}

Matrix random_unitary(int d, RngStream& rng) {
  // QR of a complex Gaussian with the R-diagonal phase fix.
  Matrix g(d, d);
  for (auto& v : g.a) v = cplx(rng.next_gaussian(), rng.next_gaussian());
  // Gram-Schmidt columns.
  Matrix q(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<cplx> col(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) col[i] = g(i, j);
    for (int prev = 0; prev < j; ++prev) {
      cplx proj = 0;
      for (int i = 0; i < d; ++i) proj += std::conj(q(i, prev)) * col[i];
      for (int i = 0; i < d; ++i) col[i] -= proj * q(i, prev);
    }
    double norm = 0;
    for (int i = 0; i < d; ++i) norm += std::norm(col[i]);
    norm = std::sqrt(norm);
    require(norm > 1e-12, ErrorCode::Unknown, "degenerate random matrix");
    for (int i = 0; i < d; ++i) q(i, j) = col[i] / norm;
  }
  return q;
}

KrausChannel random_cptp(int d, int d_env, RngStream& rng) {
  // Random isometry V : C^d -> C^(d*d_env); Kraus K_e = (I (x) <e|) V.
  const int big = d * d_env;
  Matrix g(big, d);
  for (auto& v : g.a) v = cplx(rng.next_gaussian(), rng.next_gaussian());
  // Orthonormalize the d columns.
  for (int j = 0; j < d; ++j) {
    for (int prev = 0; prev < j; ++prev) {
      cplx proj = 0;
      for (int i = 0; i < big; ++i) proj += std::conj(g(i, prev)) * g(i, j);
      for (int i = 0; i < big; ++i) g(i, j) -= proj * g(i, prev);
    }
    double norm = 0;
    for (int i = 0; i < big; ++i) norm += std::norm(g(i, j));
    norm = std::sqrt(norm);
    require(norm > 1e-12, ErrorCode::Unknown, "degenerate random isometry");
    for (int i = 0; i < big; ++i) g(i, j) /= norm;
  }
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<size_t>(d_env));
  for (int e = 0; e < d_env; ++e) {
    Matrix k(d, d);
    for (int m = 0; m < d; ++m)
      for (int i = 0; i < d; ++i) k(m, i) = g(m * d_env + e, i);
    kraus.push_back(std::move(k));
  }
  return KrausChannel(std::move(kraus));
}

}  // namespace emrekit
