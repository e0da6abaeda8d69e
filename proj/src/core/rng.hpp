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

#include <cmath>
#include <cstdint>

#include "core/complex_matrix.hpp"

namespace ptdilate {

/// Counter-based generator: output i is mix64(key + i * golden), so a stream
/// is fully determined by (key, counter) and streams can be split by deriving
/// child keys. Identical (seed, stream tags) always reproduce identical draws,
/// which is what makes sweep workers reproducible.
struct CounterRng {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  CounterRng() = default;
  explicit CounterRng(std::uint64_t key_, std::uint64_t counter_ = 0)
      : key(key_), counter(counter_) {}

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static CounterRng from_seed(std::uint64_t seed) {
    return CounterRng{mix64(seed + kGolden), 0};
  }

  /// Derive an independent child stream keyed by two tags.
  CounterRng stream(std::uint64_t tag_a, std::uint64_t tag_b = 0) const {
    std::uint64_t k = key;
    k = mix64(k ^ mix64(kGolden * (tag_a + 1)));
    k = mix64(k ^ mix64(0xD1B54A32D192ED03ull * (tag_b + 1)));
    return CounterRng{k, 0};
  }

  std::uint64_t next_u64() { return mix64(key + (++counter) * kGolden); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  /// Haar-uniform unit vector in C^n.
  CVec random_unit_state(std::size_t n) {
    CVec v(n);
    for (auto& e : v) e = cx{normal(), normal()};
    return normalized(v);
  }

 private:
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace ptdilate
