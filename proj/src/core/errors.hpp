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

#include <stdexcept>
#include <string>

namespace ptdilate {

/// Error taxonomy shared by the whole library. Each kind maps to exactly one
/// process exit code (see tools/): contract -> 2, verification -> 3,
/// exceptional_point -> 4, everything else -> 1.
enum class ErrorKind {
  contract,           // precondition / invariant violated by the caller
  verification,       // a residual exceeded its tolerance
  exceptional_point,  // coupling operator undefined (1/cos(alpha) diverges)
  post_selection,     // post-selected component numerically vanished
  serialization,      // unencodable value (NaN/Inf) or malformed document
  io,                 // file system failure
  internal,           // bug guard (did-not-converge and friends)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_contract(const std::string& msg) {
  throw Error(ErrorKind::contract, msg);
}

[[noreturn]] inline void throw_exceptional_point(const std::string& msg) {
  throw Error(ErrorKind::exceptional_point, msg);
}

}  // namespace ptdilate
