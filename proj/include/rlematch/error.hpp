// Copyright 2026 The rlematch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rlematch {

/// Machine-readable error category. The CLI reports it verbatim in the
/// `code` field of its stderr JSON.
enum class ErrorCode {
  kValidation,    // malformed input or spec
  kInvariant,     // a data-structure invariant does not hold
  kRange,         // an index or count exceeds the available data
  kPrecondition,  // input is well formed but too short for the request
  kDomain,        // a parameter lies outside the mathematical domain
  kNumerical,     // an iterative method failed to converge
  kHypothesis,    // the source violates the constant-block decay bound
  kUnsupported,
  kEstimate,      // a statistical estimate is infinite (no collisions)
  kResource,      // a configured resource cap was exceeded
  kIo,
  kUsage,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rlematch
