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

#include "core/bell.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace ptdilate {

namespace {

void validate_alice(const AliceSetting& a) {
  double n2 = std::norm(a.u) + std::norm(a.v);
  if (std::abs(n2 - 1.0) > 1e-12)
    throw_contract("AliceSetting must be normalized: |u|^2 + |v|^2 = 1");
}

CVec alice_plus(const AliceSetting& a) { return {a.u, a.v}; }
CVec alice_minus(const AliceSetting& a) { return {std::conj(a.v), -std::conj(a.u)}; }

CVec bob_state(int b) {
  return b == 0 ? CVec{cx{1.0, 0.0}, cx{0.0, 0.0}} : CVec{cx{0.0, 0.0}, cx{1.0, 0.0}};
}

double product_expectation(const ComplexMatrix& global, int b, const CVec& alice) {
  ComplexMatrix proj = kron(outer(bob_state(b)), outer(alice));
  return (proj * global).trace().real();
}

BellReport finish_report(BellReport r) {
  r.bell_value = r.b0a0 + r.b0a1 + r.b1a0 - r.b1a1;
  r.mean_term = 2.0 * r.e0;
  r.deviation_term = r.bell_value - r.mean_term;
  return r;
}

}  // namespace

BellReport bell_simulation(const DilationResult& d, const AliceSetting& a) {
  validate_alice(a);
  BellReport r;
  r.alpha = d.params.alpha;
  r.e0 = d.params.e0;
  r.s = d.params.s;
  r.picture = Picture::simulation;
  CVec up = alice_plus(a);
  CVec um = alice_minus(a);
  r.b0a0 = product_expectation(d.hhat, 0, up);
  r.b1a0 = product_expectation(d.hhat, 1, up);
  r.b0a1 = product_expectation(d.hhat, 0, um);
  r.b1a1 = product_expectation(d.hhat, 1, um);
  r.bound = bound_simulation(d.params);
  return finish_report(r);
}

double bound_simulation(const ModelParams& p) {
  validate_model_params(p);
  double c = std::cos(p.alpha);
  return std::abs(2.0 * p.s * c * c);
}

double bound_classical_local(const ModelParams& p) {
  validate_model_params(p);
  return std::abs(2.0 * p.s * std::cos(p.alpha));
}

BellReport bell_classical(const ModelParams& p, const ClassicalSetting& c) {
  validate_model_params(p);
  if (!(c.p_plus >= 0.0 && c.p_plus <= 1.0))
    throw_contract("ClassicalSetting probability must lie in [0, 1]");
  auto [lo, hi] = model_eigenvalues(p);
  double a_mean = c.p_plus * hi + (1.0 - c.p_plus) * lo;
  BellReport r;
  r.alpha = p.alpha;
  r.e0 = p.e0;
  r.s = p.s;
  r.picture = Picture::classical;
  // Bob's outcome is identically 1 and both of Alice's settings share one
  // distribution, so every correlation equals the single-outcome mean.
  r.b0a0 = r.b1a0 = r.b0a1 = r.b1a1 = a_mean;
  r.bound = bound_classical_local(p);
  return finish_report(r);
}

BellReport bell_local_hermitian(const ModelParams& p, const AliceSetting& a,
                                const LocalHermitianSetting& lh) {
  validate_model_params(p);
  validate_alice(a);
  CVec sp(lh.s_plus.begin(), lh.s_plus.end());
  CVec sm(lh.s_minus.begin(), lh.s_minus.end());
  if (std::abs(norm(sp) - 1.0) > 1e-12 || std::abs(norm(sm) - 1.0) > 1e-12 ||
      std::abs(inner(sp, sm)) > 1e-12)
    throw_contract("LocalHermitianSetting states must be orthonormal");
  auto [lo, hi] = model_eigenvalues(p);
  ComplexMatrix h_h = outer(sp) * cx{hi, 0.0} + outer(sm) * cx{lo, 0.0};
  ComplexMatrix global = kron(ComplexMatrix::identity(2), h_h);
  BellReport r;
  r.alpha = p.alpha;
  r.e0 = p.e0;
  r.s = p.s;
  r.picture = Picture::local_hermitian;
  CVec up = alice_plus(a);
  CVec um = alice_minus(a);
  r.b0a0 = product_expectation(global, 0, up);
  r.b1a0 = product_expectation(global, 1, up);
  r.b0a1 = product_expectation(global, 0, um);
  r.b1a1 = product_expectation(global, 1, um);
  r.bound = bound_classical_local(p);
  return finish_report(r);
}

ChshResult chsh_singlet() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  ComplexMatrix sz = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  // Alice measures along e0 = z and e1 = x; Bob along -(e0+e1)/sqrt(2) and
  // (-e0+e1)/sqrt(2).
  ComplexMatrix a0 = sz;
  ComplexMatrix a1 = sx;
  ComplexMatrix b0 = (sz + sx) * cx{-inv_sqrt2, 0.0};
  ComplexMatrix b1 = (sz * cx{-1.0, 0.0} + sx) * cx{inv_sqrt2, 0.0};
  // |Psi-> = (|01> - |10>)/sqrt(2).
  CVec singlet{cx{0.0, 0.0}, cx{inv_sqrt2, 0.0}, cx{-inv_sqrt2, 0.0}, cx{0.0, 0.0}};
  auto corr = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
    return inner(singlet, matvec(kron(a, b), singlet)).real();
  };
  ChshResult r;
  r.correlations = {corr(a0, b0), corr(a1, b0), corr(a0, b1), corr(a1, b1)};
  r.bell_value = r.correlations[0] + r.correlations[1] + r.correlations[2] - r.correlations[3];
  return r;
}

double chsh_classical_max() {
  int best = -8;
  for (int a0 : {-1, 1})
    for (int a1 : {-1, 1})
      for (int b0 : {-1, 1})
        for (int b1 : {-1, 1})
          best = std::max(best, a0 * b0 + a1 * b0 + a0 * b1 - a1 * b1);
  return static_cast<double>(best);
}

PictureVerdict classify_picture(double observed, const ModelParams& p) {
  if (!std::isfinite(observed)) throw_contract("classify_picture requires a finite observation");
  double dev = std::abs(observed - 2.0 * p.e0);
  if (dev <= bound_simulation(p)) return PictureVerdict::consistent_simulation;
  if (dev <= bound_classical_local(p)) return PictureVerdict::inconsistent_simulation;
  return PictureVerdict::outside_all;
}

const char* picture_name(Picture p) {
  switch (p) {
    case Picture::simulation: return "simulation";
    case Picture::classical: return "classical";
    case Picture::local_hermitian: return "local_hermitian";
  }
  return "unknown";
}

Picture picture_from_name(const std::string& name) {
  if (name == "simulation") return Picture::simulation;
  if (name == "classical") return Picture::classical;
  if (name == "local_hermitian") return Picture::local_hermitian;
  throw_contract("unknown picture: " + name);
}

const char* verdict_name(PictureVerdict v) {
  switch (v) {
    case PictureVerdict::consistent_simulation: return "consistent_simulation";
    case PictureVerdict::inconsistent_simulation: return "inconsistent_simulation";
    case PictureVerdict::outside_all: return "outside_all";
  }
  return "unknown";
}

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  if (steps < 2) throw_contract("grid needs at least 2 steps");
  std::vector<double> out(steps);
  double h = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = lo + h * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<BellReport> alpha_sweep(double e0, double s, std::span<const double> alphas,
                                    std::span<const Picture> pictures,
                                    const SweepPolicy& policy) {
  if (alphas.empty() || pictures.empty())
    throw_contract("alpha_sweep needs a nonempty grid and picture set");
  bool wants_simulation = false;
  for (Picture p : pictures) wants_simulation |= p == Picture::simulation;
  for (double a : alphas) {
    validate_model_params(ModelParams{e0, s, a});
    if (wants_simulation && at_exceptional_point(a))
      throw_exceptional_point("simulation picture is undefined on the exceptional point");
  }

  std::size_t n_rows = alphas.size() * pictures.size();
  std::vector<BellReport> rows(n_rows);
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&]() {
    try {
      for (;;) {
        std::size_t g = cursor.fetch_add(1);
        if (g >= alphas.size() || failed.load()) return;
        ModelParams p{e0, s, alphas[g]};
        for (std::size_t k = 0; k < pictures.size(); ++k) {
          BellReport r;
          switch (pictures[k]) {
            case Picture::simulation:
              r = bell_simulation(dilate_model(p), policy.alice);
              break;
            case Picture::classical:
              r = bell_classical(p, policy.classical);
              break;
            case Picture::local_hermitian:
              r = bell_local_hermitian(p, policy.alice, policy.local_hermitian);
              break;
          }
          rows[g * pictures.size() + k] = r;
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  std::size_t n_workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                                                alphas.size());
  if (n_workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) std::rethrow_exception(failure);
  return rows;
}

}  // namespace ptdilate
