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

#include "core/evolution.hpp"

#include <cmath>

#include "core/dilation.hpp"

namespace ptdilate {

CVec prepare_dilated(const CVec& psi, const ComplexMatrix& t_op, Convention c) {
  if (psi.size() != t_op.rows() || !t_op.square())
    throw_contract("prepare_dilated: psi and T dimensions disagree");
  if (norm(psi) == 0.0) throw_contract("prepare_dilated: psi must be nonzero");
  CVec tpsi = matvec(t_op, psi);
  std::size_t n = psi.size();
  CVec x(2 * n);
  if (c == Convention::plus) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = psi[i];
      x[n + i] = tpsi[i];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = -tpsi[i];
      x[n + i] = psi[i];
    }
  }
  return x;
}

EvolutionComparison evolve_and_postselect(const DilationResult& d, const CVec& psi, double t,
                                          Convention c) {
  CVec x = normalized(prepare_dilated(psi, d.t, c));
  CVec y = matvec(mat_exp(d.hhat, t), x);
  std::size_t n = psi.size();
  // The branch carrying exp(-itH) psi: |0> block for plus, |1> block for minus.
  std::size_t off = c == Convention::plus ? 0 : n;
  CVec post(y.begin() + static_cast<std::ptrdiff_t>(off),
            y.begin() + static_cast<std::ptrdiff_t>(off + n));
  double post_norm = norm(post);
  if (post_norm < 1e-14)
    throw Error(ErrorKind::post_selection, "post-selected component has vanished");

  CVec direct = normalized(matvec(mat_exp(d.h, t), psi));
  CVec post_n = normalized(post);
  // Remove the irrelevant global phase: rotate by the unit overlap phase.
  cx ov = inner(post_n, direct);
  if (std::abs(ov) > 0.0) {
    cx phase = ov / std::abs(ov);
    for (auto& e : post_n) e *= phase;
  }
  EvolutionComparison out;
  out.t = t;
  out.deviation = max_abs_diff(post_n, direct);
  out.success_probability = post_norm * post_norm;
  return out;
}

}  // namespace ptdilate
