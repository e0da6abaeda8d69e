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

// Exercises the shared-library surface exactly the way an external consumer
// would: through ptdilate/ptdilate.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "ptdilate/ptdilate.h"

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct StringFree {
  void operator()(char* s) const { ptd_string_free(s); }
};
using CStr = std::unique_ptr<char, StringFree>;

struct DilationFree {
  void operator()(ptd_dilation* d) const { ptd_dilation_free(d); }
};
using Dilation = std::unique_ptr<ptd_dilation, DilationFree>;

Dilation make(double e0, double s, double alpha) {
  ptd_dilation* raw = nullptr;
  REQUIRE(ptd_dilation_create(e0, s, alpha, &raw) == PTD_OK);
  return Dilation(raw);
}
}  // namespace

TEST_CASE("status codes carry the error taxonomy") {
  ptd_dilation* raw = nullptr;
  CHECK(ptd_dilation_create(0.0, 0.0, 0.1, &raw) == PTD_CONTRACT_VIOLATION);
  CHECK(std::string(ptd_last_error()).find("nonzero") != std::string::npos);
  CHECK(ptd_dilation_create(0.0, 1.0, kPi / 2.0, &raw) == PTD_EXCEPTIONAL_POINT);
  CHECK(ptd_dilation_create(0.0, 1.0, 1.5707963, &raw) == PTD_EXCEPTIONAL_POINT);
  CHECK(ptd_dilation_create(0.0, 1.0, 0.1, nullptr) == PTD_CONTRACT_VIOLATION);
}

TEST_CASE("matrix access") {
  Dilation d = make(0.0, 1.0, kPi / 6.0);
  double buf[32];
  size_t rows = 0, cols = 0;
  REQUIRE(ptd_dilation_matrix(d.get(), PTD_MAT_LAMBDA, buf, 8, &rows, &cols) == PTD_OK);
  CHECK(rows == 2);
  CHECK(cols == 2);
  // Lambda = 0.75 sigma_x.
  CHECK(std::abs(buf[0]) < 1e-12);              // (0,0) re
  CHECK(std::abs(buf[2] - 0.75) < 1e-10);       // (0,1) re
  CHECK(std::abs(buf[3]) < 1e-12);              // (0,1) im
  CHECK(std::abs(buf[4] - 0.75) < 1e-10);       // (1,0) re

  REQUIRE(ptd_dilation_matrix(d.get(), PTD_MAT_HHAT, buf, 32, &rows, &cols) == PTD_OK);
  CHECK(rows == 4);
  CHECK(ptd_dilation_matrix(d.get(), PTD_MAT_HHAT, buf, 8, &rows, &cols) ==
        PTD_CONTRACT_VIOLATION);
}

TEST_CASE("verification across the surface") {
  Dilation d = make(0.0, 1.0, kPi / 6.0);
  double ts[5] = {0.0, 0.5, 1.0, 2.0, 5.0};
  ptd_residuals r{};
  REQUIRE(ptd_dilation_verify(d.get(), 10, ts, 5, 42, 1e-8, &r) == PTD_OK);
  CHECK(r.pass == 1);
  CHECK(r.hermiticity < 1e-8);
  CHECK(r.evolution < 1e-8);
  // Absurd tolerance: still PTD_OK, but pass = 0.
  REQUIRE(ptd_dilation_verify(d.get(), 10, ts, 5, 42, 1e-30, &r) == PTD_OK);
  CHECK(r.pass == 0);
}

TEST_CASE("model helpers") {
  ptd_pt_kind kind{};
  double evidence = 0.0;
  REQUIRE(ptd_classify_model(0.0, 1.0, kPi / 6.0, &kind, &evidence) == PTD_OK);
  CHECK(kind == PTD_PT_UNBROKEN);
  REQUIRE(ptd_classify_model(0.0, 1.0, kPi / 2.0, &kind, &evidence) == PTD_OK);
  CHECK(kind == PTD_PT_EXCEPTIONAL);
  CHECK(evidence > 1e8);

  double lo = 0.0, hi = 0.0;
  REQUIRE(ptd_model_eigenvalues(1.0, 1.0, kPi / 3.0, &lo, &hi) == PTD_OK);
  CHECK(lo == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(hi == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("evolution through the surface") {
  Dilation d = make(0.0, 1.0, kPi / 6.0);
  double psi[4] = {1.0, 0.0, 0.0, 0.0};
  double dev = 1.0, prob = 0.0;
  REQUIRE(ptd_evolve(d.get(), psi, 0.0, PTD_CONVENTION_MINUS, &dev, &prob) == PTD_OK);
  CHECK(dev < 1e-13);
  CHECK(prob == doctest::Approx(0.375).epsilon(1e-12));
  REQUIRE(ptd_evolve(d.get(), psi, 1.0, PTD_CONVENTION_MINUS, &dev, &prob) == PTD_OK);
  CHECK(dev < 1e-8);
}

TEST_CASE("bell reports through the surface") {
  Dilation d = make(0.0, 1.0, kPi / 6.0);
  double u[2] = {kInvSqrt2, 0.0};
  double v[2] = {kInvSqrt2, 0.0};
  ptd_bell_report r{};
  REQUIRE(ptd_bell_simulation(d.get(), u, v, &r) == PTD_OK);
  CHECK(r.bell_value == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(r.picture == PTD_PICTURE_SIMULATION);

  REQUIRE(ptd_bell_classical(0.0, 1.0, kPi / 6.0, 1.0, &r) == PTD_OK);
  CHECK(r.bell_value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  double sp[4] = {1.0, 0.0, 0.0, 0.0};
  double sm[4] = {0.0, 0.0, 1.0, 0.0};
  double up[2] = {1.0, 0.0};
  double vp[2] = {0.0, 0.0};
  REQUIRE(ptd_bell_local_hermitian(0.0, 1.0, kPi / 6.0, up, vp, sp, sm, &r) == PTD_OK);
  CHECK(r.bell_value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));  // u+ = s+

  double bs = 0.0, bc = 0.0;
  REQUIRE(ptd_bounds(0.0, 1.0, kPi / 3.0, &bs, &bc) == PTD_OK);
  CHECK(bs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bc == doctest::Approx(1.0).epsilon(1e-12));

  double corr[4];
  double singlet = 0.0, cmax = 0.0;
  REQUIRE(ptd_chsh(corr, &singlet, &cmax) == PTD_OK);
  CHECK(singlet == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(cmax == 2.0);

  ptd_verdict verdict{};
  REQUIRE(ptd_classify_picture(1.6, 0.0, 1.0, kPi / 6.0, &verdict) == PTD_OK);
  CHECK(verdict == PTD_INCONSISTENT_SIMULATION);
}

TEST_CASE("scan fills rows grid-major") {
  ptd_picture pics[2] = {PTD_PICTURE_SIMULATION, PTD_PICTURE_CLASSICAL};
  std::vector<ptd_bell_report> rows(10);
  REQUIRE(ptd_scan(0.0, 1.0, 0.0, 0.49 * kPi, 5, pics, 2, rows.data()) == PTD_OK);
  CHECK(rows[0].alpha == 0.0);
  CHECK(rows[0].picture == PTD_PICTURE_SIMULATION);
  CHECK(rows[1].picture == PTD_PICTURE_CLASSICAL);
  CHECK(rows[8].alpha == doctest::Approx(0.49 * kPi).epsilon(1e-15));
  // Exceptional point in the grid with the simulation picture: status 4.
  CHECK(ptd_scan(0.0, 1.0, 0.0, kPi / 2.0, 5, pics, 2, rows.data()) == PTD_EXCEPTIONAL_POINT);
}

TEST_CASE("sampling determinism through the surface") {
  Dilation d = make(0.0, 1.0, kPi / 6.0);
  double u[2] = {kInvSqrt2, 0.0};
  double v[2] = {kInvSqrt2, 0.0};
  ptd_estimate terms_a[4], terms_b[4];
  ptd_estimate bell_a{}, bell_b{};
  REQUIRE(ptd_sample_simulation(d.get(), u, v, 20000, 7, terms_a, &bell_a) == PTD_OK);
  REQUIRE(ptd_sample_simulation(d.get(), u, v, 20000, 7, terms_b, &bell_b) == PTD_OK);
  CHECK(bell_a.mean == bell_b.mean);
  CHECK(bell_a.std_error == bell_b.std_error);
  for (int i = 0; i < 4; ++i) CHECK(terms_a[i].mean == terms_b[i].mean);

  ptd_estimate cl{};
  ptd_shot_table* table = nullptr;
  REQUIRE(ptd_sample_classical(0.0, 1.0, kPi / 6.0, 0.5, 10000, 11, &cl, &table) == PTD_OK);
  REQUIRE(table != nullptr);
  CHECK(ptd_shot_table_rows(table) == 8);
  std::uint64_t total = 0;
  for (size_t i = 0; i < ptd_shot_table_rows(table); ++i) {
    int si = -1, sj = -1;
    double oa = 0.0, ob = 0.0;
    uint64_t count = 0;
    REQUIRE(ptd_shot_table_row(table, i, &si, &sj, &oa, &ob, &count) == PTD_OK);
    CHECK(ob == 1.0);
    total += count;
  }
  CHECK(total == 4 * 10000);
  double defect = 1.0;
  REQUIRE(ptd_shot_table_factorization_defect(table, &defect) == PTD_OK);
  CHECK(defect < 5.0 / std::sqrt(10000.0));
  ptd_shot_table_free(table);

  ptd_estimate lh{};
  double sp[4] = {1.0, 0.0, 0.0, 0.0};
  double sm[4] = {0.0, 0.0, 1.0, 0.0};
  REQUIRE(ptd_sample_local_hermitian(0.0, 1.0, kPi / 6.0, u, v, sp, sm, 10000, 3, &lh) ==
          PTD_OK);
  CHECK(lh.shots == 10000);
}

TEST_CASE("serialization through the surface") {
  char* raw = nullptr;
  REQUIRE(ptd_bell_csv_header(&raw) == PTD_OK);
  CStr header(raw);
  CHECK(std::string(header.get()) ==
        "alpha,e0,s,picture,b0a0,b1a0,b0a1,b1a1,bell_value,deviation_term,bound");

  Dilation d = make(0.0, 1.0, kPi / 6.0);
  double u[2] = {kInvSqrt2, 0.0};
  double v[2] = {kInvSqrt2, 0.0};
  ptd_bell_report r{};
  REQUIRE(ptd_bell_simulation(d.get(), u, v, &r) == PTD_OK);

  raw = nullptr;
  REQUIRE(ptd_bell_report_to_csv(&r, &raw) == PTD_OK);
  CStr row(raw);
  CHECK(std::string(row.get()) ==
        "0.52359878,0,1,simulation,0.75,0.75,-0.75,-0.75,1.5,1.5,1.5");

  raw = nullptr;
  REQUIRE(ptd_bell_report_to_json(&r, &raw) == PTD_OK);
  CStr json(raw);
  ptd_bell_report back{};
  REQUIRE(ptd_bell_report_from_json(json.get(), &back) == PTD_OK);
  CHECK(back.bell_value == r.bell_value);
  CHECK(back.bound == r.bound);
  CHECK(back.picture == r.picture);

  ptd_estimate e{1.25, 0.5, 100, 7, 0};
  raw = nullptr;
  REQUIRE(ptd_estimate_to_json(&e, &raw) == PTD_OK);
  CStr ejson(raw);
  ptd_estimate eback{};
  REQUIRE(ptd_estimate_from_json(ejson.get(), &eback) == PTD_OK);
  CHECK(eback.mean == e.mean);
  CHECK(eback.shots == e.shots);

  raw = nullptr;
  REQUIRE(ptd_dilation_report_json(d.get(), nullptr, &raw) == PTD_OK);
  CStr dilation_json(raw);
  CHECK(std::string(dilation_json.get()).find("\"lambda\"") != std::string::npos);

  CHECK(ptd_bell_report_from_json("{not json", &back) == PTD_ERROR);
}
