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

#include "core/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "core/rng.hpp"

namespace ptdilate {

namespace {

struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  EstimatorResult finish(std::uint64_t seed) const {
    EstimatorResult r;
    r.mean = mean;
    r.shots = n;
    r.seed = seed;
    if (n < 2) {
      r.std_error = 0.0;
      r.degenerate = true;
    } else {
      double var = std::max(m2, 0.0) / static_cast<double>(n - 1);
      r.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return r;
  }
};

/// Two-outcome inverse-CDF sampler over {outcome[0] w.p. prob0, outcome[1]}.
struct TwoOutcomeSampler {
  double prob0 = 1.0;
  double outcome0 = 0.0;
  double outcome1 = 0.0;

  double draw(CounterRng& rng) const { return rng.uniform01() < prob0 ? outcome0 : outcome1; }
};

CVec branch_state(const AliceSetting& a, AliceBranch branch) {
  if (branch == AliceBranch::plus) return {a.u, a.v};
  return {std::conj(a.v), -std::conj(a.u)};
}

void validate_shots(std::uint64_t shots) {
  if (shots < 1) throw_contract("sampling needs at least one shot");
}

/// Collapse the eigendecomposition of a Hermitian observable into grouped
/// outcomes with Born weights for the given state.
TwoOutcomeSampler born_sampler(const ComplexMatrix& observable, const CVec& state) {
  EigenDecomposition e = eig_hermitian(observable);
  std::size_t n = e.values.size();
  std::vector<double> outcomes;
  std::vector<double> probs;
  double group_tol = 1e-8 * std::max(1.0, observable.norm_max());
  for (std::size_t k = 0; k < n;) {
    std::size_t end = k + 1;
    while (end < n && std::abs(e.values[end].real() - e.values[k].real()) < group_tol) ++end;
    double p = 0.0;
    double lam = 0.0;
    for (std::size_t j = k; j < end; ++j) {
      CVec col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = e.vectors(i, j);
      p += std::norm(inner(col, state));
      lam += e.values[j].real();
    }
    lam /= static_cast<double>(end - k);
    outcomes.push_back(lam);
    probs.push_back(p);
    k = end;
  }
  // The spectra in this library have at most two distinct levels; renormalize
  // the Born weights against rounding and fold everything into two outcomes.
  double total = 0.0;
  for (double p : probs) total += p;
  if (total <= 0.0) throw Error(ErrorKind::internal, "Born weights vanished");
  TwoOutcomeSampler s;
  if (outcomes.size() == 1) {
    s.prob0 = 1.0;
    s.outcome0 = s.outcome1 = outcomes[0];
    return s;
  }
  if (outcomes.size() != 2)
    throw Error(ErrorKind::internal, "expected a two-level spectrum for shot sampling");
  s.prob0 = probs[0] / total;
  s.outcome0 = outcomes[0];
  s.outcome1 = outcomes[1];
  return s;
}

}  // namespace

EstimatorResult sample_hhat(const DilationResult& d, int bob, const AliceSetting& a,
                            AliceBranch branch, std::uint64_t shots, std::uint64_t seed) {
  validate_shots(shots);
  if (bob != 0 && bob != 1) throw_contract("Bob's setting must be 0 or 1");
  CVec alice = branch_state(a, branch);
  double n2 = std::norm(alice[0]) + std::norm(alice[1]);
  if (std::abs(n2 - 1.0) > 1e-12)
    throw_contract("AliceSetting must be normalized: |u|^2 + |v|^2 = 1");
  CVec state(4, cx{0.0, 0.0});
  std::size_t off = bob == 0 ? 0 : 2;
  state[off] = alice[0];
  state[off + 1] = alice[1];
  TwoOutcomeSampler sampler = born_sampler(d.hhat, state);
  CounterRng rng = CounterRng::from_seed(seed).stream(static_cast<std::uint64_t>(bob),
                                                      branch == AliceBranch::plus ? 0 : 1);
  Welford acc;
  for (std::uint64_t k = 0; k < shots; ++k) acc.add(sampler.draw(rng));
  return acc.finish(seed);
}

SimulationSampleResult sample_simulation_bell(const DilationResult& d, const AliceSetting& a,
                                              std::uint64_t shots, std::uint64_t seed) {
  SimulationSampleResult out;
  out.terms[0] = sample_hhat(d, 0, a, AliceBranch::plus, shots, seed);
  out.terms[1] = sample_hhat(d, 1, a, AliceBranch::plus, shots, seed);
  out.terms[2] = sample_hhat(d, 0, a, AliceBranch::minus, shots, seed);
  out.terms[3] = sample_hhat(d, 1, a, AliceBranch::minus, shots, seed);
  out.bell.mean =
      out.terms[0].mean + out.terms[2].mean + out.terms[1].mean - out.terms[3].mean;
  double var = 0.0;
  for (const auto& t : out.terms) var += t.std_error * t.std_error;
  out.bell.std_error = std::sqrt(var);
  out.bell.shots = shots;
  out.bell.seed = seed;
  out.bell.degenerate = out.terms[0].degenerate || out.terms[1].degenerate ||
                        out.terms[2].degenerate || out.terms[3].degenerate;
  return out;
}

ClassicalSampleResult sample_classical(const ModelParams& p, const ClassicalSetting& c,
                                       std::uint64_t shots, std::uint64_t seed) {
  validate_shots(shots);
  validate_model_params(p);
  if (!(c.p_plus >= 0.0 && c.p_plus <= 1.0))
    throw_contract("ClassicalSetting probability must lie in [0, 1]");
  auto [lo, hi] = model_eigenvalues(p);
  TwoOutcomeSampler sampler{c.p_plus, hi, lo};
  CounterRng base = CounterRng::from_seed(seed);

  ClassicalSampleResult out;
  out.table.shots_per_setting = shots;
  // Independent product stream per setting pair.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CounterRng rng = base.stream(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
      std::uint64_t n_hi = 0;
      for (std::uint64_t k = 0; k < shots; ++k)
        if (sampler.draw(rng) == hi) ++n_hi;
      if (n_hi > 0) out.table.rows.push_back({i, j, hi, 1.0, n_hi});
      if (shots - n_hi > 0) out.table.rows.push_back({i, j, lo, 1.0, shots - n_hi});
    }
  }
  // Correlated realization for the Bell combination: A0 and A1 read the same
  // draw and Bob contributes 1, so each shot contributes 2a.
  CounterRng rng = base.stream(0xBE11, 0);
  Welford acc;
  for (std::uint64_t k = 0; k < shots; ++k) acc.add(2.0 * sampler.draw(rng));
  out.bell = acc.finish(seed);
  return out;
}

EstimatorResult sample_local_hermitian(const ModelParams& p, const AliceSetting& a,
                                       const LocalHermitianSetting& lh, std::uint64_t shots,
                                       std::uint64_t seed) {
  validate_shots(shots);
  validate_model_params(p);
  CVec sp(lh.s_plus.begin(), lh.s_plus.end());
  CVec sm(lh.s_minus.begin(), lh.s_minus.end());
  if (std::abs(norm(sp) - 1.0) > 1e-12 || std::abs(norm(sm) - 1.0) > 1e-12 ||
      std::abs(inner(sp, sm)) > 1e-12)
    throw_contract("LocalHermitianSetting states must be orthonormal");
  double n2 = std::norm(a.u) + std::norm(a.v);
  if (std::abs(n2 - 1.0) > 1e-12)
    throw_contract("AliceSetting must be normalized: |u|^2 + |v|^2 = 1");
  auto [lo, hi] = model_eigenvalues(p);
  CVec up{a.u, a.v};
  double p_plus = std::norm(inner(sp, up));
  double p_minus = std::norm(inner(sm, up));
  double total = p_plus + p_minus;
  TwoOutcomeSampler sampler{p_plus / total, hi, lo};
  CounterRng rng = CounterRng::from_seed(seed).stream(0x10CA1, 0);
  Welford acc;
  for (std::uint64_t k = 0; k < shots; ++k) acc.add(2.0 * sampler.draw(rng));
  return acc.finish(seed);
}

double factorization_defect(const ShotTable& t) {
  if (t.rows.empty()) throw_contract("factorization_defect needs a nonempty table");
  // Totals per setting pair and per single setting; marginals pool the other
  // party's settings. Cells absent from the table count as probability zero.
  std::map<std::pair<int, int>, double> pair_total;
  std::map<int, double> i_total, j_total;
  std::map<std::pair<int, double>, double> a_marginal;  // (i, a) -> count
  std::map<std::pair<int, double>, double> b_marginal;  // (j, b) -> count
  std::map<std::tuple<int, int, double, double>, double> joint_count;
  std::vector<double> a_values, b_values;
  for (const auto& row : t.rows) {
    double cnt = static_cast<double>(row.count);
    pair_total[{row.setting_i, row.setting_j}] += cnt;
    i_total[row.setting_i] += cnt;
    j_total[row.setting_j] += cnt;
    a_marginal[{row.setting_i, row.outcome_a}] += cnt;
    b_marginal[{row.setting_j, row.outcome_b}] += cnt;
    joint_count[{row.setting_i, row.setting_j, row.outcome_a, row.outcome_b}] += cnt;
    a_values.push_back(row.outcome_a);
    b_values.push_back(row.outcome_b);
  }
  auto dedupe = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(a_values);
  dedupe(b_values);
  double worst = 0.0;
  for (const auto& [pair, total] : pair_total) {
    auto [i, j] = pair;
    for (double a : a_values) {
      for (double b : b_values) {
        auto it = joint_count.find({i, j, a, b});
        double joint = it == joint_count.end() ? 0.0 : it->second / total;
        auto ai = a_marginal.find({i, a});
        auto bj = b_marginal.find({j, b});
        double pa = ai == a_marginal.end() ? 0.0 : ai->second / i_total[i];
        double pb = bj == b_marginal.end() ? 0.0 : bj->second / j_total[j];
        worst = std::max(worst, std::abs(joint - pa * pb));
      }
    }
  }
  return worst;
}

}  // namespace ptdilate
