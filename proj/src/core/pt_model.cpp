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

#include "core/pt_model.hpp"

#include <cmath>

namespace ptdilate {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate_model_params(const ModelParams& p) {
  if (!std::isfinite(p.e0) || !std::isfinite(p.s) || !std::isfinite(p.alpha))
    throw_contract("model parameters must be finite");
  if (p.s == 0.0) throw_contract("model parameter s must be nonzero");
  if (p.alpha <= -kPi / 2.0 || p.alpha > kPi / 2.0 + 1e-12)
    throw_contract("model parameter alpha must lie in (-pi/2, pi/2]");
}

bool at_exceptional_point(double alpha) {
  return std::abs(std::abs(alpha) - kPi / 2.0) < kExceptionalPointTol;
}

double omega0(const ModelParams& p) { return 2.0 * p.s * std::cos(p.alpha); }

ComplexMatrix build_model(const ModelParams& p) {
  validate_model_params(p);
  double sn = std::sin(p.alpha);
  ComplexMatrix h(2, 2);
  h(0, 0) = cx{p.e0, p.s * sn};
  h(0, 1) = cx{p.s, 0.0};
  h(1, 0) = cx{p.s, 0.0};
  h(1, 1) = cx{p.e0, -p.s * sn};
  return h;
}

std::pair<double, double> model_eigenvalues(const ModelParams& p) {
  validate_model_params(p);
  double gap = p.s * std::cos(p.alpha);
  return {p.e0 - gap, p.e0 + gap};
}

ComplexMatrix parity_op() {
  return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
}

double pt_symmetry_check(const ComplexMatrix& h, const ComplexMatrix& p) {
  if (!h.square() || !p.square() || h.rows() != p.rows())
    throw_contract("pt_symmetry_check requires square matrices of equal size");
  if (hermitian_defect(p) > 1e-12)
    throw_contract("parity operator must be Hermitian");
  ComplexMatrix p2 = p * p;
  if ((p2 - ComplexMatrix::identity(p.rows())).norm_max() > 1e-12)
    throw_contract("parity operator must be an involution (P^2 = I)");
  // Hermitian involution => P^-1 = P.
  ComplexMatrix transformed = p * h.conj() * p;
  return (transformed - h).norm_max();
}

PTClassification classify(const ComplexMatrix& h) {
  if (!h.square()) throw_contract("classify requires a square matrix");
  EigenDecomposition e = eig_general(h);
  PTClassification out;
  out.eigenvalues = e.values;
  out.evidence = e.condition;
  double imag_tol = 1e-10 * std::max(1.0, h.norm_max());
  bool all_real = true;
  for (const auto& lam : e.values)
    if (std::abs(lam.imag()) >= imag_tol) all_real = false;
  if (!all_real) {
    out.kind = PTKind::broken;
  } else if (e.condition > kDefectivenessThreshold) {
    out.kind = PTKind::exceptional;
  } else {
    out.kind = PTKind::unbroken;
  }
  return out;
}

const char* pt_kind_name(PTKind k) {
  switch (k) {
    case PTKind::unbroken: return "unbroken";
    case PTKind::exceptional: return "exceptional";
    case PTKind::broken: return "broken";
  }
  return "unknown";
}

}  // namespace ptdilate
