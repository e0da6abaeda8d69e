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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/evolution.hpp"
#include "core/dilation.hpp"
#include "test_helpers.hpp"

using namespace ptdilate;
using namespace ptdilate::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("prepare_dilated layouts") {
  CVec e0{cx{1.0, 0.0}, cx{0.0, 0.0}};
  CVec e1{cx{0.0, 0.0}, cx{1.0, 0.0}};
  ComplexMatrix ident = ComplexMatrix::identity(2);

  CVec plus = prepare_dilated(e0, ident, Convention::plus);
  CHECK(plus == CVec{cx{1.0, 0.0}, cx{0.0, 0.0}, cx{1.0, 0.0}, cx{0.0, 0.0}});

  CVec minus = prepare_dilated(e1, ident, Convention::minus);
  CHECK(minus == CVec{cx{0.0, 0.0}, cx{-1.0, 0.0}, cx{0.0, 0.0}, cx{1.0, 0.0}});

  // With the pi/6 coupling: (-T psi; psi) = (-1.1547005, -0.5773503i, 1, 0).
  ComplexMatrix t = coupling_operator_2d({0.0, 1.0, kPi / 6.0});
  CVec m = prepare_dilated(e0, t, Convention::minus);
  CHECK(std::abs(m[0] - cx{-1.1547005383792515, 0.0}) < 1e-10);
  CHECK(std::abs(m[1] - cx{0.0, -0.57735026918962573}) < 1e-10);
  CHECK(std::abs(m[2] - cx{1.0, 0.0}) == 0.0);
  CHECK(std::abs(m[3]) == 0.0);

  CVec zero{cx{0.0, 0.0}, cx{0.0, 0.0}};
  CHECK_THROWS_AS((void)prepare_dilated(zero, ident, Convention::plus), Error);
}

TEST_CASE("post-selected evolution reproduces the direct evolution") {
  DilationResult d = dilate_model({0.0, 1.0, kPi / 6.0});
  CVec psi{cx{1.0, 0.0}, cx{0.0, 0.0}};

  EvolutionComparison c1 = evolve_and_postselect(d, psi, 1.0, Convention::minus);
  CHECK(c1.deviation < 1e-8);
  CHECK(c1.success_probability > 0.0);
  CHECK(c1.success_probability < 1.0);

  EvolutionComparison c2 = evolve_and_postselect(d, psi, 1.0, Convention::plus);
  CHECK(c2.deviation < 1e-8);
}

TEST_CASE("t = 0 baselines") {
  // T = I splits the dilated state into equal halves.
  DilationResult d0 = dilate_model({0.0, 1.0, 0.0});
  CounterRng rng = CounterRng::from_seed(10);
  for (int i = 0; i < 5; ++i) {
    CVec psi = rng.random_unit_state(2);
    EvolutionComparison c = evolve_and_postselect(d0, psi, 0.0, Convention::minus);
    CHECK(c.deviation < 1e-13);
    CHECK(c.success_probability == doctest::Approx(0.5).epsilon(1e-12));
  }

  // At pi/6 with psi = |0>: success = 1/(1 + |T psi|^2) = 1/(1 + 5/3) = 0.375.
  DilationResult d = dilate_model({0.0, 1.0, kPi / 6.0});
  CVec psi{cx{1.0, 0.0}, cx{0.0, 0.0}};
  EvolutionComparison c = evolve_and_postselect(d, psi, 0.0, Convention::minus);
  CHECK(c.success_probability == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(c.deviation < 1e-13);
}

TEST_CASE("deviation stays tiny across times, states, and angles") {
  CounterRng rng = CounterRng::from_seed(20);
  for (double alpha : {0.0, kPi / 8.0, kPi / 4.0, 0.45 * kPi}) {
    DilationResult d = dilate_model({0.5, 1.0, alpha});
    for (int trial = 0; trial < 3; ++trial) {
      CVec psi = rng.random_unit_state(2);
      for (int k = 0; k <= 20; ++k) {
        double t = 10.0 * k / 20.0;
        for (Convention conv : {Convention::plus, Convention::minus}) {
          EvolutionComparison c = evolve_and_postselect(d, psi, t, conv);
          CHECK(c.deviation < 1e-8);
          CHECK(c.success_probability > 0.0);
          CHECK(c.success_probability < 1.0);
        }
      }
    }
  }
}

TEST_CASE("success probability is exactly one half whenever T = I") {
  DilationResult d0 = dilate_model({1.0, 2.0, 0.0});
  CounterRng rng = CounterRng::from_seed(21);
  CVec psi = rng.random_unit_state(2);
  for (double t : {0.0, 0.7, 3.3, 9.1}) {
    EvolutionComparison c = evolve_and_postselect(d0, psi, t, Convention::minus);
    CHECK(c.success_probability == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("evolution comparison is invariant under psi scaling") {
  DilationResult d = dilate_model({0.0, 1.0, kPi / 6.0});
  CVec psi{cx{0.6, 0.1}, cx{-0.3, 0.7}};
  CVec scaled{psi[0] * cx{2.5, -1.0}, psi[1] * cx{2.5, -1.0}};
  EvolutionComparison a = evolve_and_postselect(d, psi, 1.7, Convention::minus);
  EvolutionComparison b = evolve_and_postselect(d, scaled, 1.7, Convention::minus);
  CHECK(std::abs(a.success_probability - b.success_probability) < 1e-12);
  CHECK(std::abs(a.deviation - b.deviation) < 1e-12);
}

TEST_CASE("non-unitary norm stays within the eigenvector condition bound") {
  ModelParams p{0.0, 1.0, kPi / 3.0};
  ComplexMatrix h = build_model(p);
  double kappa = eig_general(h).condition;
  CounterRng rng = CounterRng::from_seed(22);
  CVec psi = rng.random_unit_state(2);
  double worst = 0.0;
  for (int k = 0; k <= 40; ++k) {
    double t = 10.0 * k / 40.0;
    worst = std::max(worst, norm(matvec(mat_exp(h, t), psi)));
  }
  CHECK(worst > 1.0);  // genuinely non-unitary somewhere on the grid
  CHECK(worst <= kappa * (1.0 + 1e-10));
}

TEST_CASE("post-selection failure is reported, not silently returned") {
  // Hand-built pathological "dilation": Hhat = sigma_y (x) I rotates the
  // ancilla; at t = pi/4 the minus branch empties out completely.
  DilationResult fake;
  fake.params = {0.0, 1.0, 0.0};
  fake.h = ComplexMatrix::identity(2);
  fake.t = ComplexMatrix::identity(2);
  fake.lambda = ComplexMatrix::identity(2);
  fake.omega = ComplexMatrix(2, 2);
  fake.hhat = kron(sigma_y(), ComplexMatrix::identity(2));
  CVec psi{cx{1.0, 0.0}, cx{0.0, 0.0}};
  bool saw_post_selection_error = false;
  try {
    (void)evolve_and_postselect(fake, psi, kPi / 4.0, Convention::minus);
  } catch (const Error& e) {
    saw_post_selection_error = e.kind() == ErrorKind::post_selection;
  }
  CHECK(saw_post_selection_error);
}
