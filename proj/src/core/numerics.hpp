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

#include "core/complex_matrix.hpp"

namespace ptdilate {

/// Eigendecomposition carrier for both the Hermitian and the general solver.
/// `vectors` columns are right eigenvectors matching `values` (ascending by
/// real part, ties by imaginary part). `condition` is the 2-norm condition
/// number of the eigenvector matrix; values above kDefectivenessThreshold mean
/// "treat as non-diagonalizable".
struct EigenDecomposition {
  std::vector<cx> values;
  ComplexMatrix vectors;
  double condition = 1.0;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigHermitianInputTol = 1e-10;
inline constexpr double kDefectivenessThreshold = 1e8;

/// Max-entry norm of A - A^dagger. Zero for exactly Hermitian input.
double hermitian_defect(const ComplexMatrix& a);

/// Cyclic Jacobi for Hermitian matrices. Eigenvalues come out real (imaginary
/// parts exactly zero) and ascending, eigenvectors orthonormal.
/// Throws a contract error when hermitian_defect(a) >= 1e-10.
EigenDecomposition eig_hermitian(const ComplexMatrix& a);

/// General complex eigensolver: closed form for n <= 2, Hessenberg + shifted
/// QR above. Never rejects defective input; near-defectiveness shows up as a
/// large `condition` instead.
EigenDecomposition eig_general(const ComplexMatrix& a);

/// Propagator exp(-i t A). Hermitian input goes through the spectral path
/// (unitary result), anything else through scaling-and-squaring Pade.
ComplexMatrix mat_exp(const ComplexMatrix& a, double t);

/// Plain exp(M) via Pade 13 with scaling and squaring (internal building
/// block; mat_exp is the public sign convention).
ComplexMatrix exp_raw(const ComplexMatrix& m);

/// Hermitian PSD square root: B Hermitian PSD with B*B = A. Eigenvalues in
/// [-1e-12, 0) are clamped to zero; anything more negative is a contract
/// error.
ComplexMatrix herm_sqrt_psd(const ComplexMatrix& a);

/// Gauss-Jordan inverse with partial pivoting.
ComplexMatrix inverse(const ComplexMatrix& a);

/// 2-norm condition number of a (square) matrix via the spectrum of A^dagger A.
double condition_number(const ComplexMatrix& a);

}  // namespace ptdilate
