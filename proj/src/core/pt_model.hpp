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

#include <utility>

#include "core/numerics.hpp"

namespace ptdilate {

/// Parameters of the two-dimensional PT-symmetric family
///   H = e0*I + s*[[i sin(alpha), 1], [1, -i sin(alpha)]].
/// Valid range: s != 0, alpha in (-pi/2, pi/2]; alpha = pi/2 is the
/// exceptional point where the eigenvalues and eigenvectors coalesce.
struct ModelParams {
  double e0 = 0.0;
  double s = 1.0;
  double alpha = 0.0;
};

enum class PTKind { unbroken, exceptional, broken };

struct PTClassification {
  PTKind kind = PTKind::unbroken;
  std::vector<cx> eigenvalues;
  double evidence = 1.0;  // eigenvector-matrix condition number
};

/// Angles closer than this to +-pi/2 are treated as sitting on the
/// exceptional point; 1/cos(alpha) is useless past that resolution.
inline constexpr double kExceptionalPointTol = 1e-6;

void validate_model_params(const ModelParams& p);
bool at_exceptional_point(double alpha);

/// omega0 = 2 s cos(alpha), the level splitting of the family.
double omega0(const ModelParams& p);

ComplexMatrix build_model(const ModelParams& p);

/// Closed-form spectrum (lambda_minus, lambda_plus) = e0 -+ s cos(alpha).
std::pair<double, double> model_eigenvalues(const ModelParams& p);

/// Parity operator of the family (sigma_x).
ComplexMatrix parity_op();

/// Max-entry norm of P conj(H) P^-1 - H with time reversal realized as
/// entrywise conjugation. Zero means PT-symmetric. P must be a Hermitian
/// unitary involution (P^2 = I).
double pt_symmetry_check(const ComplexMatrix& h, const ComplexMatrix& p);

/// Spectrum-based classification: real diagonalizable -> unbroken, real but
/// defective (condition above threshold) -> exceptional, complex -> broken.
PTClassification classify(const ComplexMatrix& h);

const char* pt_kind_name(PTKind k);

}  // namespace ptdilate
