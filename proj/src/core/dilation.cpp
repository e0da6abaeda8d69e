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

#include "core/dilation.hpp"

#include <cmath>

#include "core/evolution.hpp"
#include "core/rng.hpp"

namespace ptdilate {

ComplexMatrix coupling_operator_2d(const ModelParams& p) {
  validate_model_params(p);
  if (at_exceptional_point(p.alpha))
    throw_exceptional_point("coupling operator diverges at the exceptional point alpha = pi/2");
  double cs = std::cos(p.alpha);
  double sn = std::sin(p.alpha);
  ComplexMatrix t(2, 2);
  t(0, 0) = cx{1.0 / cs, 0.0};
  t(0, 1) = cx{0.0, -sn / cs};
  t(1, 0) = cx{0.0, sn / cs};
  t(1, 1) = cx{1.0 / cs, 0.0};
  return t;
}

std::pair<ComplexMatrix, ComplexMatrix> build_lambda_omega(const ComplexMatrix& h,
                                                           const ComplexMatrix& t) {
  if (!h.square() || !t.square() || h.rows() != t.rows())
    throw_contract("build_lambda_omega requires square H and T of equal size");
  if (hermitian_defect(t) > 1e-10)
    throw_contract("coupling operator T must be Hermitian");
  EigenDecomposition te = eig_hermitian(t);
  if (te.values.front().real() <= 0.0)
    throw_contract("coupling operator T must be positive-definite");
  ComplexMatrix t2 = t * t;
  ComplexMatrix denom = ComplexMatrix::identity(t.rows()) + t2;
  ComplexMatrix denom_inv = inverse(denom);  // PSD + I, never singular
  ComplexMatrix lambda = (h + t * h * t) * denom_inv;
  ComplexMatrix omega = (h * t - t * h) * denom_inv;
  return {lambda, omega};
}

std::pair<ComplexMatrix, ComplexMatrix> build_lambda_omega_via_metric(const ComplexMatrix& h,
                                                                      const ComplexMatrix& tau) {
  if (!h.square() || !tau.square() || h.rows() != tau.rows())
    throw_contract("build_lambda_omega_via_metric requires square H and tau of equal size");
  ComplexMatrix root = herm_sqrt_psd(tau);
  ComplexMatrix root_inv = inverse(root);
  ComplexMatrix mix_inv = inverse(root_inv + root);
  ComplexMatrix lambda = (h * root_inv + root * h) * mix_inv;
  ComplexMatrix omega = (h - root * h * root_inv) * mix_inv;
  return {lambda, omega};
}

ComplexMatrix build_hhat(const ComplexMatrix& lambda, const ComplexMatrix& omega) {
  if (!lambda.square() || !omega.square() || lambda.rows() != omega.rows())
    throw_contract("build_hhat requires square Lambda and Omega of equal size");
  if (hermitian_defect(lambda) > 1e-10)
    throw_contract("build_hhat: Lambda must be Hermitian");
  if ((omega + omega.adjoint()).norm_max() > 1e-10)
    throw_contract("build_hhat: Omega must be anti-Hermitian");
  std::size_t n = lambda.rows();
  ComplexMatrix hhat(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      hhat(i, j) = lambda(i, j);
      hhat(n + i, n + j) = lambda(i, j);
      hhat(i, n + j) = omega(i, j);
      hhat(n + i, j) = -omega(i, j);
    }
  return hhat;
}

namespace {

double spectrum_distance(const ComplexMatrix& hhat, const ModelParams& p) {
  EigenDecomposition e = eig_hermitian(hhat);
  auto [lo, hi] = model_eigenvalues(p);
  double expected[4] = {lo, lo, hi, hi};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(e.values[i].real() - expected[i]));
  return worst;
}

std::map<std::string, double> static_residuals(const DilationResult& d) {
  std::map<std::string, double> r;
  r["hermiticity"] = hermitian_defect(d.hhat);
  r["generator_primary"] = (d.lambda + d.omega * d.t - d.h).norm_max();
  r["generator_secondary"] = (d.lambda * d.t - d.omega - d.t * d.h).norm_max();
  r["spectrum"] = spectrum_distance(d.hhat, d.params);
  return r;
}

}  // namespace

DilationResult dilate_model(const ModelParams& p) {
  DilationResult d;
  d.params = p;
  d.h = build_model(p);
  d.t = coupling_operator_2d(p);
  auto [lambda, omega] = build_lambda_omega(d.h, d.t);
  d.lambda = lambda;
  d.omega = omega;
  d.hhat = build_hhat(lambda, omega);
  d.residuals = static_residuals(d);
  // The coupling norm scales as 1/cos(alpha); once rounding eats the
  // generator identities the result is not a dilation in any usable sense.
  if (!residuals_pass(d.residuals, 1e-8))
    throw Error(ErrorKind::verification,
                "dilation residuals exceed tolerance; alpha is too close to the "
                "exceptional point for a trustworthy construction");
  return d;
}

std::map<std::string, double> verify_dilation(const DilationResult& d, int trials,
                                              std::span<const double> t_samples,
                                              std::uint64_t seed) {
  if (trials < 1) throw_contract("verify_dilation needs at least one trial");
  std::map<std::string, double> r = static_residuals(d);

  // Spectral form of Hhat so each t costs two small products.
  EigenDecomposition he = eig_hermitian(d.hhat);
  CounterRng rng = CounterRng::from_seed(seed);
  double worst = 0.0;
  std::vector<CVec> states(trials);
  for (int k = 0; k < trials; ++k) states[k] = rng.random_unit_state(2);
  for (double t : t_samples) {
    ComplexMatrix phases(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      phases(i, i) = std::exp(cx{0.0, -t * he.values[i].real()});
    ComplexMatrix u_hat = he.vectors * phases * he.vectors.adjoint();
    ComplexMatrix u_sys = mat_exp(d.h, t);
    for (const CVec& psi : states) {
      CVec evolved = matvec(u_sys, psi);
      for (Convention conv : {Convention::plus, Convention::minus}) {
        CVec lhs = matvec(u_hat, prepare_dilated(psi, d.t, conv));
        CVec rhs = prepare_dilated(evolved, d.t, conv);
        worst = std::max(worst, max_abs_diff(lhs, rhs));
      }
    }
  }
  r["evolution"] = worst;
  return r;
}

bool residuals_pass(const std::map<std::string, double>& residuals, double tol) {
  for (const auto& [name, value] : residuals)
    if (!(value < tol)) return false;
  return true;
}

CVec p1_project(const CVec& x) {
  if (x.size() % 2 != 0 || x.empty()) throw_contract("p1_project needs an even-length vector");
  return CVec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(x.size() / 2));
}

bool x_space_member(const DilationResult& d, const CVec& x, std::span<const double> t_samples,
                    double tol) {
  if (x.size() != 4) throw_contract("x_space_member expects a 4-component state");
  if (norm(x) == 0.0) throw_contract("x_space_member: zero vector is degenerate");
  CVec xn = normalized(x);
  CVec top = p1_project(xn);
  if (max_abs_diff(p1_project(matvec(d.hhat, xn)), matvec(d.h, top)) > tol) return false;
  for (double t : t_samples) {
    CVec lhs = p1_project(matvec(mat_exp(d.hhat, t), xn));
    CVec rhs = matvec(mat_exp(d.h, t), top);
    if (max_abs_diff(lhs, rhs) > tol) return false;
  }
  return true;
}

}  // namespace ptdilate
