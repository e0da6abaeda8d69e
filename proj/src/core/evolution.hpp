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

#include "core/complex_matrix.hpp"

namespace ptdilate {

struct DilationResult;

/// Which dilated-state pairing carries the system state:
///   plus:  |0>|psi> + |1>|T psi>   (post-select ancilla |0>)
///   minus: |1>|psi> - |0>|T psi>   (post-select ancilla |1>)
/// `minus` is the default throughout; the block form of Hhat is derived
/// from it.
enum class Convention { plus, minus };

struct EvolutionComparison {
  double t = 0.0;
  /// Max-entry distance between the post-selected state and exp(-itH) psi
  /// after matching normalization and global phase.
  double deviation = 0.0;
  /// Weight of the post-selected ancilla branch in the evolved state.
  double success_probability = 0.0;
};

/// Unnormalized dilated vector per convention (ancilla (x) system layout).
CVec prepare_dilated(const CVec& psi, const ComplexMatrix& t_op, Convention c);

/// Evolve the normalized dilated state under Hhat for time t, project the
/// ancilla branch of the convention, and compare against the directly
/// computed exp(-itH) psi.
EvolutionComparison evolve_and_postselect(const DilationResult& d, const CVec& psi, double t,
                                          Convention c);

}  // namespace ptdilate
