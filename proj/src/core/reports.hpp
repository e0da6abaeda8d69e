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

#include <string>
#include <string_view>

#include "core/evolution.hpp"
#include "core/sampling.hpp"

namespace ptdilate {

// CSV is the plotting-friendly export: fixed headers, 8 significant digits.
// JSON is the faithful interchange format: 17 significant digits, complex
// numbers as [re, im] pairs, matrices as row-major nested arrays; every
// encoder round-trips bit-exactly through its decoder. NaN/Inf anywhere is a
// serialization error.

inline constexpr const char* kBellCsvHeader =
    "alpha,e0,s,picture,b0a0,b1a0,b0a1,b1a1,bell_value,deviation_term,bound";
inline constexpr const char* kEvolutionCsvHeader = "t,deviation,success_probability";
inline constexpr const char* kShotTableCsvHeader = "setting_i,setting_j,outcome_a,outcome_b,count";

std::string format_real_csv(double x);   // %.8g
std::string format_real_json(double x);  // %.17g

std::string to_csv_row(const BellReport& r);
std::string to_csv_row(const EvolutionComparison& r);
std::string to_csv(const ShotTable& t);  // header + rows

std::string to_json(const BellReport& r);
BellReport bell_report_from_json(std::string_view text);

std::string to_json(const EstimatorResult& r);
EstimatorResult estimator_from_json(std::string_view text);

std::string to_json(const DilationResult& d);
DilationResult dilation_from_json(std::string_view text);

std::string to_json(const ComplexMatrix& m);

}  // namespace ptdilate
