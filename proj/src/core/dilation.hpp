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

#include <map>
#include <span>
#include <string>

#include "core/pt_model.hpp"

namespace ptdilate {

/// A built dilation: the 2x2 model Hamiltonian H, the coupling operator T
/// pairing the system state with its ancilla-tagged partner, the Hermitian /
/// anti-Hermitian blocks Lambda and Omega, and the 4x4 Hermitian dilation
///   Hhat = I_2 (x) Lambda + i sigma_y (x) Omega = [[Lambda, Omega],
///                                                  [-Omega, Lambda]]
/// in ancilla (x) system ordering (|0>|0>, |0>|1>, |1>|0>, |1>|1>).
///
/// The invariant subspace is {[psi; T psi]}: Hhat [psi; T psi] = [H psi;
/// T H psi], which is exactly the pair of generator identities
///   Lambda + Omega T = H   and   Lambda T - Omega = T H.
struct DilationResult {
  ModelParams params;
  ComplexMatrix h;       // 2x2, non-Hermitian for alpha != 0
  ComplexMatrix t;       // 2x2, Hermitian positive-definite coupling
  ComplexMatrix lambda;  // 2x2, Hermitian
  ComplexMatrix omega;   // 2x2, anti-Hermitian
  ComplexMatrix hhat;    // 4x4, Hermitian
  std::map<std::string, double> residuals;
};

/// Closed-form coupling operator of the two-dimensional family:
///   T = (I + sin(alpha) sigma_y) / cos(alpha),
/// the unique Hermitian positive solution of the generator identities for
/// this H. Throws an exceptional-point error for |alpha| -> pi/2.
ComplexMatrix coupling_operator_2d(const ModelParams& p);

/// Lambda = (H + T H T)(I + T^2)^-1 and Omega = (H T - T H)(I + T^2)^-1,
/// derived by eliminating Lambda and Omega from the generator identities.
/// Algebraically identical to build_lambda_omega_via_metric with tau = T^2.
std::pair<ComplexMatrix, ComplexMatrix> build_lambda_omega(const ComplexMatrix& h,
                                                           const ComplexMatrix& t);

/// The metric-operator route: with r = tau^(1/2) (Hermitian PSD root),
///   Lambda = (H r^-1 + r H)(r^-1 + r)^-1,
///   Omega  = (H - r H r^-1)(r^-1 + r)^-1.
/// Kept as an independent computation path; the two routes are cross-checked
/// in the test suite.
std::pair<ComplexMatrix, ComplexMatrix> build_lambda_omega_via_metric(const ComplexMatrix& h,
                                                                      const ComplexMatrix& tau);

/// Assemble the 4x4 dilation from its blocks. Lambda must be Hermitian and
/// Omega anti-Hermitian (contract error otherwise).
ComplexMatrix build_hhat(const ComplexMatrix& lambda, const ComplexMatrix& omega);

/// Full pipeline for the two-dimensional family. Fills the cheap static
/// residuals (hermiticity, generator identities, spectrum); the evolution
/// residual comes from verify_dilation.
DilationResult dilate_model(const ModelParams& p);

/// Residual bundle for a built dilation:
///   hermiticity          |Hhat - Hhat^dagger|_max
///   generator_primary    |Lambda + Omega T - H|_max
///   generator_secondary  |Lambda T - Omega - T H|_max
///   evolution            worst deviation of exp(-it Hhat) x from the dilated
///                        image of exp(-it H) psi over random psi, both state
///                        conventions, and all t samples
///   spectrum             multiset distance of eig(Hhat) from twofold
///                        {lambda_-, lambda_+}
std::map<std::string, double> verify_dilation(const DilationResult& d, int trials,
                                              std::span<const double> t_samples,
                                              std::uint64_t seed);

bool residuals_pass(const std::map<std::string, double>& residuals, double tol = 1e-8);

/// First-half projector: [phi1; phi2] -> phi1.
CVec p1_project(const CVec& x);

/// Membership in the dilation-invariant set: P1 Hhat x = H P1 x and
/// P1 exp(-it Hhat) x = exp(-it H) P1 x at every sampled t, within tol.
/// x is normalized first; the zero vector is a contract error.
bool x_space_member(const DilationResult& d, const CVec& x, std::span<const double> t_samples,
                    double tol = 1e-8);

}  // namespace ptdilate
