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

#include "core/complex_matrix.hpp"

#include <cmath>

namespace ptdilate {

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cx>> rows) {
  std::size_t r = rows.size();
  if (r == 0) throw_contract("matrix needs at least one row");
  std::size_t c = rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw_contract("ragged rows in matrix literal");
    std::size_t j = 0;
    for (const auto& e : row) m(i, j++) = e;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = std::conj(entries_[k]);
  return m;
}

cx ComplexMatrix::trace() const {
  if (!square()) throw_contract("trace requires a square matrix");
  cx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::norm_max() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::norm_one() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double ComplexMatrix::norm_frobenius() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const auto& e : entries_)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw_contract("matrix shape mismatch in +");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw_contract("matrix shape mismatch in -");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw_contract("matrix shape mismatch in *");
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      cx aik = a(i, k);
      if (aik == cx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cx aij = a(i, j);
      if (aij == cx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

CVec matvec(const ComplexMatrix& a, const CVec& x) {
  if (a.cols() != x.size()) throw_contract("matrix/vector shape mismatch");
  CVec y(a.rows(), cx{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

cx inner(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw_contract("vector length mismatch");
  cx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const CVec& v) {
  double s = 0.0;
  for (const auto& e : v) s += std::norm(e);
  return std::sqrt(s);
}

CVec normalized(const CVec& v) {
  double n = norm(v);
  if (n == 0.0) throw_contract("cannot normalize the zero vector");
  CVec out(v);
  for (auto& e : out) e /= n;
  return out;
}

ComplexMatrix outer(const CVec& v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

double max_abs_diff(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) throw_contract("vector length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace ptdilate
