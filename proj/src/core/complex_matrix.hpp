// Copyright 2026 The ptdilate authors
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

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "core/errors.hpp"

namespace ptdilate {

using cx = std::complex<double>;
using CVec = std::vector<cx>;

/// Dense row-major complex matrix. Sized for the small problems this library
/// deals in (2x2 and 4x4 dominate); everything is value-semantic and pure.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, cx{0.0, 0.0}) {
    if (rows == 0 || cols == 0) throw_contract("matrix dimensions must be >= 1");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cx>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const cx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<cx>& entries() const { return entries_; }
  std::vector<cx>& entries() { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cx trace() const;

  /// Max |entry| over the matrix.
  double norm_max() const;
  /// Max absolute column sum (operator 1-norm).
  double norm_one() const;
  double norm_frobenius() const;

  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cx scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }
  friend ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> entries_;
};

/// Kronecker product, left factor on the slow (ancilla) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// y = A x.
CVec matvec(const ComplexMatrix& a, const CVec& x);

/// <a|b> = sum conj(a_i) b_i.
cx inner(const CVec& a, const CVec& b);

double norm(const CVec& v);
CVec normalized(const CVec& v);

/// Rank-one |v><v|.
ComplexMatrix outer(const CVec& v);

double max_abs_diff(const CVec& a, const CVec& b);

}  // namespace ptdilate
