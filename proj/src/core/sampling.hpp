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

#include <cstdint>

#include "core/bell.hpp"

namespace ptdilate {

/// Finite-shot estimate. std_error is the Bessel-corrected sample standard
/// deviation divided by sqrt(shots); a single shot has no variance estimate,
/// so it is reported as zero with the degenerate flag raised instead of
/// being fabricated.
struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool degenerate = false;
};

/// Which of Alice's orthogonal states is measured: plus -> |u+>, minus -> |u->.
enum class AliceBranch { plus, minus };

struct ShotRow {
  int setting_i = 0;  // Bob
  int setting_j = 0;  // Alice
  double outcome_a = 0.0;
  double outcome_b = 0.0;
  std::uint64_t count = 0;
};

/// Counts per (outcome_a, outcome_b, setting_i, setting_j); counts sum to
/// shots_per_setting within each setting pair.
struct ShotTable {
  std::uint64_t shots_per_setting = 0;
  std::vector<ShotRow> rows;
};

struct ClassicalSampleResult {
  EstimatorResult bell;
  ShotTable table;
};

struct SimulationSampleResult {
  // Per-term estimators in report order: b0a0, b1a0, b0a1, b1a1.
  std::array<EstimatorResult, 4> terms;
  // Combined Bell estimator: mean of the signed term means, standard error
  // propagated in quadrature (the four streams are independent).
  EstimatorResult bell;
};

/// Born-rule sampling of Hhat's eigenvalues in the product state
/// |bob> (x) |u_branch>. Degenerate eigenvalues are aggregated over their
/// eigenspaces, so outcomes take exactly the twofold {lambda-, lambda+}
/// values. The stream is keyed by (bob, branch) on top of the seed.
EstimatorResult sample_hhat(const DilationResult& d, int bob, const AliceSetting& a,
                            AliceBranch branch, std::uint64_t shots, std::uint64_t seed);

/// All four setting pairs plus the combined Bell estimator.
SimulationSampleResult sample_simulation_bell(const DilationResult& d, const AliceSetting& a,
                                              std::uint64_t shots, std::uint64_t seed);

/// Classical picture: per setting pair an i.i.d. product process (Alice
/// lambda+- with probability p+-, Bob constantly 1) fills the shot table;
/// the Bell estimator uses the correlated realization (both of Alice's
/// settings read the same draw), whose per-shot combination is 2a.
ClassicalSampleResult sample_classical(const ModelParams& p, const ClassicalSetting& c,
                                       std::uint64_t shots, std::uint64_t seed);

/// Local Hermitian picture: Born sampling of H_h in |u+> (the |u-> terms of
/// the combination cancel pairwise), per-shot combination 2a.
EstimatorResult sample_local_hermitian(const ModelParams& p, const AliceSetting& a,
                                       const LocalHermitianSetting& lh, std::uint64_t shots,
                                       std::uint64_t seed);

/// max over (a, b, i, j) of |p(ab|ij) - p(a|i) p(b|j)| with marginals taken
/// across the other party's settings. Zero for an exactly factorizing table.
double factorization_defect(const ShotTable& t);

}  // namespace ptdilate
