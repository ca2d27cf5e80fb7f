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

#include "emrekit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace emrekit {

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows_init) {
  rows = static_cast<int>(rows_init.size());
  cols = rows > 0 ? static_cast<int>(rows_init.begin()->size()) : 0;
  a.reserve(static_cast<size_t>(rows) * cols);
  for (const auto& r : rows_init) {
    require(static_cast<int>(r.size()) == cols, ErrorCode::DimensionMismatch,
            "ragged initializer for Matrix");
    a.insert(a.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
  require(x.rows == y.rows && x.cols == y.cols, ErrorCode::DimensionMismatch,
          "matrix add: shape mismatch");
  Matrix out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
  return out;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
  require(x.rows == y.rows && x.cols == y.cols, ErrorCode::DimensionMismatch,
          "matrix sub: shape mismatch");
  Matrix out = x;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
  return out;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  require(x.cols == y.rows, ErrorCode::DimensionMismatch,
          "matrix mul: inner dimension mismatch");
  Matrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      cplx xv = x(i, k);
      if (xv == cplx(0, 0)) continue;
      const cplx* yr = &y.a[static_cast<size_t>(k) * y.cols];
      cplx* or_ = &out.a[static_cast<size_t>(i) * out.cols];
      for (int j = 0; j < y.cols; ++j) or_[j] += xv * yr[j];
    }
  }
  return out;
}

Matrix operator*(cplx s, const Matrix& x) {
  Matrix out = x;
  for (auto& v : out.a) v *= s;
  return out;
}

Matrix dagger(const Matrix& m) {
  Matrix out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

Matrix transposed(const Matrix& m) {
  Matrix out(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
  return out;
}

Matrix conjugated(const Matrix& m) {
  Matrix out = m;
  for (auto& v : out.a) v = std::conj(v);
  return out;
}

cplx trace(const Matrix& m) {
  require(m.square(), ErrorCode::DimensionMismatch, "trace of non-square matrix");
  cplx t = 0;
  for (int i = 0; i < m.rows; ++i) t += m(i, i);
  return t;
}

double max_abs(const Matrix& m) {
  double best = 0;
  for (const auto& v : m.a) best = std::max(best, std::abs(v));
  return best;
}

double max_abs_diff(const Matrix& x, const Matrix& y) {
  require(x.rows == y.rows && x.cols == y.cols, ErrorCode::DimensionMismatch,
          "max_abs_diff: shape mismatch");
  double best = 0;
  for (size_t i = 0; i < x.a.size(); ++i)
    best = std::max(best, std::abs(x.a[i] - y.a[i]));
  return best;
}

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) {
      cplx xv = x(i, j);
      if (xv == cplx(0, 0)) continue;
      for (int k = 0; k < y.rows; ++k)
        for (int l = 0; l < y.cols; ++l)
          out(i * y.rows + k, j * y.cols + l) = xv * y(k, l);
    }
  return out;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.square()) return false;
  for (int i = 0; i < m.rows; ++i)
    for (int j = i; j < m.cols; ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

bool is_unitary(const Matrix& m, double tol) {
  if (!m.square()) return false;
  return max_abs_diff(dagger(m) * m, Matrix::identity(m.rows)) <= tol;
}

void eigen_hermitian(const Matrix& m, std::vector<double>& values,
                     Matrix& vectors) {
  require(m.square(), ErrorCode::DimensionMismatch,
          "eigen_hermitian: non-square matrix");
  require(is_hermitian(m, 1e-8 * std::max(1.0, max_abs(m))),
          ErrorCode::InvalidArgument, "eigen_hermitian: matrix not Hermitian");
  const int n = m.rows;
  Matrix A = m;
  Matrix V = Matrix::identity(n);

  double scale = std::max(1.0, max_abs(A));
  const double stop = 1e-14 * scale;
  const int max_sweeps = 100;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cplx g = A(p, q);
        double ag = std::abs(g);
        if (ag <= stop * 1e-2) continue;
        double app = A(p, p).real();
        double aqq = A(q, q).real();
        double tau = (aqq - app) / (2.0 * ag);
        double t = (tau >= 0 ? -1.0 : 1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        cplx u = g / ag;  // phase of the off-diagonal element

        // Columns p, q of the rotation: (c, conj(u)*s) and (-u*s, c).
        for (int k = 0; k < n; ++k) {
          cplx akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp + std::conj(u) * s * akq;
          A(k, q) = -u * s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          cplx apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk + u * s * aqk;
          A(q, k) = -std::conj(u) * s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          cplx vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp + std::conj(u) * s * vkq;
          V(k, q) = -u * s * vkp + c * vkq;
        }
        A(p, q) = 0;
        A(q, p) = 0;
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = A(i, i).real();
  std::sort(order.begin(), order.end(),
            [&diag](int x, int y) { return diag[x] < diag[y]; });

  values.resize(n);
  vectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    values[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) vectors(i, j) = V(i, order[j]);
  }
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  std::vector<double> values;
  Matrix vectors;
  eigen_hermitian(m, values, vectors);
  return values;
}

}  // namespace emrekit
