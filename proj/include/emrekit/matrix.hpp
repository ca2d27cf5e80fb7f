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

#ifndef EMREKIT_MATRIX_HPP_
#define EMREKIT_MATRIX_HPP_

#include <initializer_list>
#include <vector>

#include "emrekit/common.hpp"

namespace emrekit {

// Dense complex matrix, row-major.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows_init);

  static Matrix identity(int n);

  cplx& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
  bool square() const { return rows == cols; }
};

Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator*(cplx s, const Matrix& x);
inline Matrix operator*(double s, const Matrix& x) { return cplx(s, 0) * x; }

Matrix dagger(const Matrix& m);
Matrix transposed(const Matrix& m);
Matrix conjugated(const Matrix& m);
cplx trace(const Matrix& m);
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& x, const Matrix& y);

// Kronecker product; dimensions multiply.
Matrix kron(const Matrix& x, const Matrix& y);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

// Eigen-decomposition of a Hermitian matrix via cyclic complex Jacobi
// rotations. Eigenvalues come back ascending, eigenvectors as the columns
// of `vectors` (A * v_k = w_k * v_k).
void eigen_hermitian(const Matrix& m, std::vector<double>& values,
                     Matrix& vectors);

// Eigenvalues only; convenience wrapper.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

}  // namespace emrekit

#endif  // EMREKIT_MATRIX_HPP_
