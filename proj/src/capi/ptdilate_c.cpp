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

#include "ptdilate/ptdilate.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/bell.hpp"
#include "core/dilation.hpp"
#include "core/evolution.hpp"
#include "core/reports.hpp"
#include "core/sampling.hpp"

using namespace ptdilate;

struct ptd_dilation {
  DilationResult impl;
};

struct ptd_shot_table {
  ShotTable impl;
};

namespace {

thread_local std::string g_last_error = "ok";

ptd_status status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::contract: return PTD_CONTRACT_VIOLATION;
    case ErrorKind::verification: return PTD_VERIFICATION_FAILURE;
    case ErrorKind::exceptional_point: return PTD_EXCEPTIONAL_POINT;
    default: return PTD_ERROR;
  }
}

template <typename Fn>
ptd_status guarded(Fn&& fn) {
  try {
    fn();
    return PTD_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_for(e);
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PTD_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PTD_ERROR;
  }
}

cx make_cx(const double pair[2]) { return cx{pair[0], pair[1]}; }

AliceSetting alice_from(const double u[2], const double v[2]) {
  if (u == nullptr || v == nullptr) throw_contract("u and v must not be NULL");
  return AliceSetting{make_cx(u), make_cx(v)};
}

LocalHermitianSetting lh_from(const double sp[4], const double sm[4]) {
  if (sp == nullptr || sm == nullptr) throw_contract("s_plus and s_minus must not be NULL");
  LocalHermitianSetting lh;
  lh.s_plus = {cx{sp[0], sp[1]}, cx{sp[2], sp[3]}};
  lh.s_minus = {cx{sm[0], sm[1]}, cx{sm[2], sm[3]}};
  return lh;
}

ptd_bell_report convert(const BellReport& r) {
  ptd_bell_report out;
  out.alpha = r.alpha;
  out.e0 = r.e0;
  out.s = r.s;
  out.picture = static_cast<int>(r.picture);
  out.b0a0 = r.b0a0;
  out.b1a0 = r.b1a0;
  out.b0a1 = r.b0a1;
  out.b1a1 = r.b1a1;
  out.bell_value = r.bell_value;
  out.mean_term = r.mean_term;
  out.deviation_term = r.deviation_term;
  out.bound = r.bound;
  return out;
}

BellReport convert(const ptd_bell_report& r) {
  BellReport out;
  out.alpha = r.alpha;
  out.e0 = r.e0;
  out.s = r.s;
  if (r.picture < 0 || r.picture > 2) throw_contract("invalid picture value");
  out.picture = static_cast<Picture>(r.picture);
  out.b0a0 = r.b0a0;
  out.b1a0 = r.b1a0;
  out.b0a1 = r.b0a1;
  out.b1a1 = r.b1a1;
  out.bell_value = r.bell_value;
  out.mean_term = r.mean_term;
  out.deviation_term = r.deviation_term;
  out.bound = r.bound;
  return out;
}

ptd_estimate convert(const EstimatorResult& r) {
  return ptd_estimate{r.mean, r.std_error, r.shots, r.seed, r.degenerate ? 1 : 0};
}

EstimatorResult convert(const ptd_estimate& r) {
  EstimatorResult out;
  out.mean = r.mean;
  out.std_error = r.std_error;
  out.shots = r.shots;
  out.seed = r.seed;
  out.degenerate = r.degenerate != 0;
  return out;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_out(const void* p, const char* name) {
  if (p == nullptr) throw_contract(std::string(name) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* ptd_version(void) { return "0.1.0"; }

const char* ptd_last_error(void) { return g_last_error.c_str(); }

ptd_status ptd_dilation_create(double e0, double s, double alpha, ptd_dilation** out) {
  return guarded([&] {
    require_out(out, "out");
    auto holder = std::make_unique<ptd_dilation>();
    holder->impl = dilate_model(ModelParams{e0, s, alpha});
    *out = holder.release();
  });
}

void ptd_dilation_free(ptd_dilation* d) { delete d; }

ptd_status ptd_dilation_matrix(const ptd_dilation* d, ptd_matrix_id which, double* out,
                               size_t capacity, size_t* rows, size_t* cols) {
  return guarded([&] {
    require_out(d, "dilation");
    require_out(out, "out");
    const ComplexMatrix* m = nullptr;
    switch (which) {
      case PTD_MAT_H: m = &d->impl.h; break;
      case PTD_MAT_T: m = &d->impl.t; break;
      case PTD_MAT_LAMBDA: m = &d->impl.lambda; break;
      case PTD_MAT_OMEGA: m = &d->impl.omega; break;
      case PTD_MAT_HHAT: m = &d->impl.hhat; break;
    }
    if (m == nullptr) throw_contract("unknown matrix id");
    size_t need = 2 * m->rows() * m->cols();
    if (capacity < need) throw_contract("output buffer too small");
    size_t k = 0;
    for (size_t i = 0; i < m->rows(); ++i)
      for (size_t j = 0; j < m->cols(); ++j) {
        out[k++] = (*m)(i, j).real();
        out[k++] = (*m)(i, j).imag();
      }
    if (rows) *rows = m->rows();
    if (cols) *cols = m->cols();
  });
}

ptd_status ptd_dilation_verify(const ptd_dilation* d, int trials, const double* t_samples,
                               size_t n_t, uint64_t seed, double tolerance, ptd_residuals* out) {
  return guarded([&] {
    require_out(d, "dilation");
    require_out(out, "out");
    if (t_samples == nullptr && n_t > 0) throw_contract("t_samples must not be NULL");
    if (!(tolerance > 0.0)) throw_contract("tolerance must be positive");
    auto residuals =
        verify_dilation(d->impl, trials, std::span<const double>(t_samples, n_t), seed);
    out->hermiticity = residuals.at("hermiticity");
    out->generator_primary = residuals.at("generator_primary");
    out->generator_secondary = residuals.at("generator_secondary");
    out->evolution = residuals.at("evolution");
    out->spectrum = residuals.at("spectrum");
    out->pass = residuals_pass(residuals, tolerance) ? 1 : 0;
  });
}

ptd_status ptd_classify_model(double e0, double s, double alpha, ptd_pt_kind* kind,
                              double* evidence) {
  return guarded([&] {
    require_out(kind, "kind");
    PTClassification c = classify(build_model(ModelParams{e0, s, alpha}));
    *kind = static_cast<ptd_pt_kind>(c.kind);
    if (evidence) *evidence = c.evidence;
  });
}

ptd_status ptd_model_eigenvalues(double e0, double s, double alpha, double* lambda_minus,
                                 double* lambda_plus) {
  return guarded([&] {
    auto [lo, hi] = model_eigenvalues(ModelParams{e0, s, alpha});
    if (lambda_minus) *lambda_minus = lo;
    if (lambda_plus) *lambda_plus = hi;
  });
}

ptd_status ptd_evolve(const ptd_dilation* d, const double psi[4], double t,
                      ptd_convention convention, double* deviation, double* success_probability) {
  return guarded([&] {
    require_out(d, "dilation");
    require_out(psi, "psi");
    CVec state{cx{psi[0], psi[1]}, cx{psi[2], psi[3]}};
    Convention conv =
        convention == PTD_CONVENTION_PLUS ? Convention::plus : Convention::minus;
    EvolutionComparison cmp = evolve_and_postselect(d->impl, state, t, conv);
    if (deviation) *deviation = cmp.deviation;
    if (success_probability) *success_probability = cmp.success_probability;
  });
}

ptd_status ptd_bell_simulation(const ptd_dilation* d, const double u[2], const double v[2],
                               ptd_bell_report* out) {
  return guarded([&] {
    require_out(d, "dilation");
    require_out(out, "out");
    *out = convert(bell_simulation(d->impl, alice_from(u, v)));
  });
}

ptd_status ptd_bell_classical(double e0, double s, double alpha, double p_plus,
                              ptd_bell_report* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = convert(bell_classical(ModelParams{e0, s, alpha}, ClassicalSetting{p_plus}));
  });
}

ptd_status ptd_bell_local_hermitian(double e0, double s, double alpha, const double u[2],
                                    const double v[2], const double s_plus[4],
                                    const double s_minus[4], ptd_bell_report* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = convert(bell_local_hermitian(ModelParams{e0, s, alpha}, alice_from(u, v),
                                        lh_from(s_plus, s_minus)));
  });
}

ptd_status ptd_bounds(double e0, double s, double alpha, double* simulation,
                      double* classical_local) {
  return guarded([&] {
    ModelParams p{e0, s, alpha};
    if (simulation) *simulation = bound_simulation(p);
    if (classical_local) *classical_local = bound_classical_local(p);
  });
}

ptd_status ptd_chsh(double correlations[4], double* singlet_value, double* classical_max) {
  return guarded([&] {
    ChshResult r = chsh_singlet();
    if (correlations)
      for (int i = 0; i < 4; ++i) correlations[i] = r.correlations[i];
    if (singlet_value) *singlet_value = r.bell_value;
    if (classical_max) *classical_max = chsh_classical_max();
  });
}

ptd_status ptd_classify_picture(double observed, double e0, double s, double alpha,
                                ptd_verdict* out) {
  return guarded([&] {
    require_out(out, "out");
    *out = static_cast<ptd_verdict>(classify_picture(observed, ModelParams{e0, s, alpha}));
  });
}

ptd_status ptd_scan(double e0, double s, double alpha_min, double alpha_max, size_t steps,
                    const ptd_picture* pictures, size_t n_pictures, ptd_bell_report* rows) {
  return guarded([&] {
    require_out(pictures, "pictures");
    require_out(rows, "rows");
    std::vector<Picture> pics(n_pictures);
    for (size_t i = 0; i < n_pictures; ++i) {
      if (pictures[i] < 0 || pictures[i] > 2) throw_contract("invalid picture value");
      pics[i] = static_cast<Picture>(pictures[i]);
    }
    std::vector<double> grid = linspace(alpha_min, alpha_max, steps);
    std::vector<BellReport> out = alpha_sweep(e0, s, grid, pics);
    for (size_t i = 0; i < out.size(); ++i) rows[i] = convert(out[i]);
  });
}

ptd_status ptd_sample_simulation(const ptd_dilation* d, const double u[2], const double v[2],
                                 uint64_t shots, uint64_t seed, ptd_estimate terms[4],
                                 ptd_estimate* bell) {
  return guarded([&] {
    require_out(d, "dilation");
    SimulationSampleResult r = sample_simulation_bell(d->impl, alice_from(u, v), shots, seed);
    if (terms)
      for (int i = 0; i < 4; ++i) terms[i] = convert(r.terms[i]);
    if (bell) *bell = convert(r.bell);
  });
}

ptd_status ptd_sample_classical(double e0, double s, double alpha, double p_plus, uint64_t shots,
                                uint64_t seed, ptd_estimate* bell, ptd_shot_table** table) {
  return guarded([&] {
    ClassicalSampleResult r =
        sample_classical(ModelParams{e0, s, alpha}, ClassicalSetting{p_plus}, shots, seed);
    if (bell) *bell = convert(r.bell);
    if (table) {
      auto holder = std::make_unique<ptd_shot_table>();
      holder->impl = std::move(r.table);
      *table = holder.release();
    }
  });
}

ptd_status ptd_sample_local_hermitian(double e0, double s, double alpha, const double u[2],
                                      const double v[2], const double s_plus[4],
                                      const double s_minus[4], uint64_t shots, uint64_t seed,
                                      ptd_estimate* bell) {
  return guarded([&] {
    require_out(bell, "bell");
    *bell = convert(sample_local_hermitian(ModelParams{e0, s, alpha}, alice_from(u, v),
                                           lh_from(s_plus, s_minus), shots, seed));
  });
}

size_t ptd_shot_table_rows(const ptd_shot_table* t) {
  return t == nullptr ? 0 : t->impl.rows.size();
}

ptd_status ptd_shot_table_row(const ptd_shot_table* t, size_t index, int* setting_i,
                              int* setting_j, double* outcome_a, double* outcome_b,
                              uint64_t* count) {
  return guarded([&] {
    require_out(t, "table");
    if (index >= t->impl.rows.size()) throw_contract("row index out of range");
    const ShotRow& row = t->impl.rows[index];
    if (setting_i) *setting_i = row.setting_i;
    if (setting_j) *setting_j = row.setting_j;
    if (outcome_a) *outcome_a = row.outcome_a;
    if (outcome_b) *outcome_b = row.outcome_b;
    if (count) *count = row.count;
  });
}

ptd_status ptd_shot_table_factorization_defect(const ptd_shot_table* t, double* out) {
  return guarded([&] {
    require_out(t, "table");
    require_out(out, "out");
    *out = factorization_defect(t->impl);
  });
}

void ptd_shot_table_free(ptd_shot_table* t) { delete t; }

ptd_status ptd_bell_csv_header(char** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = dup_string(kBellCsvHeader);
  });
}

ptd_status ptd_bell_report_to_csv(const ptd_bell_report* r, char** out) {
  return guarded([&] {
    require_out(r, "report");
    require_out(out, "out");
    *out = dup_string(to_csv_row(convert(*r)));
  });
}

ptd_status ptd_bell_report_to_json(const ptd_bell_report* r, char** out) {
  return guarded([&] {
    require_out(r, "report");
    require_out(out, "out");
    *out = dup_string(to_json(convert(*r)));
  });
}

ptd_status ptd_bell_report_from_json(const char* text, ptd_bell_report* out) {
  return guarded([&] {
    require_out(text, "text");
    require_out(out, "out");
    *out = convert(bell_report_from_json(text));
  });
}

ptd_status ptd_estimate_to_json(const ptd_estimate* e, char** out) {
  return guarded([&] {
    require_out(e, "estimate");
    require_out(out, "out");
    *out = dup_string(to_json(convert(*e)));
  });
}

ptd_status ptd_estimate_from_json(const char* text, ptd_estimate* out) {
  return guarded([&] {
    require_out(text, "text");
    require_out(out, "out");
    *out = convert(estimator_from_json(text));
  });
}

ptd_status ptd_dilation_report_json(const ptd_dilation* d, const ptd_residuals* residuals,
                                    char** out) {
  return guarded([&] {
    require_out(d, "dilation");
    require_out(out, "out");
    DilationResult copy = d->impl;
    if (residuals) {
      copy.residuals["hermiticity"] = residuals->hermiticity;
      copy.residuals["generator_primary"] = residuals->generator_primary;
      copy.residuals["generator_secondary"] = residuals->generator_secondary;
      copy.residuals["evolution"] = residuals->evolution;
      copy.residuals["spectrum"] = residuals->spectrum;
    }
    *out = dup_string(to_json(copy));
  });
}

ptd_status ptd_evolution_csv_header(char** out) {
  return guarded([&] {
    require_out(out, "out");
    *out = dup_string(kEvolutionCsvHeader);
  });
}

ptd_status ptd_evolution_csv_row(double t, double deviation, double success_probability,
                                 char** out) {
  return guarded([&] {
    require_out(out, "out");
    EvolutionComparison cmp{t, deviation, success_probability};
    *out = dup_string(to_csv_row(cmp));
  });
}

ptd_status ptd_shot_table_to_csv(const ptd_shot_table* t, char** out) {
  return guarded([&] {
    require_out(t, "table");
    require_out(out, "out");
    *out = dup_string(to_csv(t->impl));
  });
}

void ptd_string_free(char* s) { delete[] s; }

}  // extern "C"
