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

#include <array>

#include "core/dilation.hpp"

namespace ptdilate {

/// The three ways of accounting for the joint correlations:
///   simulation      - expectations of the dilation Hamiltonian Hhat in
///                     product states,
///   classical       - two-outcome local model (Alice reads lambda_+-, Bob
///                     reads 1),
///   local_hermitian - isospectral product Hamiltonian I (x) H_h.
enum class Picture { simulation, classical, local_hermitian };

/// Alice's measurement states |u+> = u|0> + v|1>, |u-> = conj(v)|0> - conj(u)|1>.
/// (u, v) must be normalized to 1e-12.
struct AliceSetting {
  cx u{1.0, 0.0};
  cx v{0.0, 0.0};
};

/// Probability that Alice's outcome is lambda_+ in the classical picture.
struct ClassicalSetting {
  double p_plus = 1.0;
};

/// Orthonormal eigenvectors of the local Hermitian stand-in
/// H_h = lambda_+ |s+><s+| + lambda_- |s-><s-|.
struct LocalHermitianSetting {
  std::array<cx, 2> s_plus{cx{1.0, 0.0}, cx{0.0, 0.0}};
  std::array<cx, 2> s_minus{cx{0.0, 0.0}, cx{1.0, 0.0}};
};

/// Four correlation expectations and the Bell combination
///   bell_value = b0a0 + b0a1 + b1a0 - b1a1
/// decomposed as mean_term (2 e0) plus deviation_term, with the picture's
/// bound on |deviation_term|.
struct BellReport {
  double alpha = 0.0;
  double e0 = 0.0;
  double s = 0.0;
  Picture picture = Picture::simulation;
  double b0a0 = 0.0;
  double b1a0 = 0.0;
  double b0a1 = 0.0;
  double b1a1 = 0.0;
  double bell_value = 0.0;
  double mean_term = 0.0;
  double deviation_term = 0.0;
  double bound = 0.0;
};

struct ChshResult {
  // <A0B0>, <A1B0>, <A0B1>, <A1B1> for the singlet with the standard angles.
  std::array<double, 4> correlations{};
  double bell_value = 0.0;
};

enum class PictureVerdict { consistent_simulation, inconsistent_simulation, outside_all };

/// Literal trace expectations Tr[(|b><b| (x) |u><u|) Hhat] for the four
/// setting pairs. The Bell combination lands on
/// 2 e0 + (conj(u) v + u conj(v)) omega0 cos(alpha).
BellReport bell_simulation(const DilationResult& d, const AliceSetting& a);

/// |2 s cos^2(alpha)|: ceiling of the simulation-picture deviation.
double bound_simulation(const ModelParams& p);
/// |2 s cos(alpha)|: shared ceiling of the classical and local-Hermitian
/// deviations.
double bound_classical_local(const ModelParams& p);

/// Classical picture: every correlation is p+ lambda+ + p- lambda- (Bob's
/// outcome is identically 1, Alice's two settings share the distribution),
/// so the combination reduces to 2 e0 + omega0 (p+ - p-).
BellReport bell_classical(const ModelParams& p, const ClassicalSetting& c);

/// Local Hermitian picture against Hhat' = I (x) H_h; the combination reduces
/// to 2 <u+|H_h|u+>.
BellReport bell_local_hermitian(const ModelParams& p, const AliceSetting& a,
                                const LocalHermitianSetting& lh);

/// CHSH baseline: singlet state, spin measurements at the standard angles.
/// bell_value = 2 sqrt(2).
ChshResult chsh_singlet();

/// Exhaustive maximum of a0 b0 + a1 b0 + a0 b1 - a1 b1 over deterministic
/// +-1 assignments: exactly 2.
double chsh_classical_max();

/// Compare |observed - 2 e0| against the two bounds.
PictureVerdict classify_picture(double observed, const ModelParams& p);

const char* picture_name(Picture p);
Picture picture_from_name(const std::string& name);
const char* verdict_name(PictureVerdict v);

/// Extremal measurement settings used by alpha_sweep so each picture traces
/// its upper bound (u = v = 1/sqrt(2); p+ = 1; u+ aligned with s+).
struct SweepPolicy {
  AliceSetting alice{cx{1.0 / 1.4142135623730951, 0.0}, cx{1.0 / 1.4142135623730951, 0.0}};
  ClassicalSetting classical{1.0};
  LocalHermitianSetting local_hermitian{
      std::array<cx, 2>{cx{1.0 / 1.4142135623730951, 0.0}, cx{1.0 / 1.4142135623730951, 0.0}},
      std::array<cx, 2>{cx{1.0 / 1.4142135623730951, 0.0}, cx{-1.0 / 1.4142135623730951, 0.0}}};
};

/// One report per (alpha, picture), grid-major then picture order. Rows are
/// computed by a small worker pool; output order is fixed by the grid, not by
/// scheduling. A grid touching the exceptional point with the simulation
/// picture raises the exceptional-point error.
std::vector<BellReport> alpha_sweep(double e0, double s, std::span<const double> alphas,
                                    std::span<const Picture> pictures,
                                    const SweepPolicy& policy = {});

/// Inclusive linear grid with `steps` points (steps >= 2).
std::vector<double> linspace(double lo, double hi, std::size_t steps);

}  // namespace ptdilate
