// Copyright 2026 The nbspec authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace nbspec {

// Stable error codes shared by the C++ exceptions and the C API.
enum class ErrorCode : int {
  Ok = 0,
  InvalidEdge = 1,
  NoMatchingExists = 2,
  RejectionBudgetExhausted = 3,
  ConvergenceFailure = 4,
  ReducibleOperator = 5,
  DimensionMismatch = 6,
  NotRegular = 7,
  EnumerationBudget = 8,
  PreconditionTangled = 9,
  HypothesisFailed = 10,
  ContainmentViolation = 11,
  EmptySample = 12,
  PreconditionFailed = 13,
  InvalidPath = 14,
  IoFailure = 15,
  Unknown = 99,
};

const char* error_code_name(ErrorCode code);

// Base of the library error hierarchy; carries a stable code for the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define NBSPEC_DEFINE_ERROR(NAME)                      \
  class NAME##Error : public Error {                   \
   public:                                             \
    explicit NAME##Error(const std::string& message)   \
        : Error(ErrorCode::NAME, message) {}           \
  }

NBSPEC_DEFINE_ERROR(InvalidEdge);
NBSPEC_DEFINE_ERROR(NoMatchingExists);
NBSPEC_DEFINE_ERROR(RejectionBudgetExhausted);
NBSPEC_DEFINE_ERROR(ConvergenceFailure);
NBSPEC_DEFINE_ERROR(ReducibleOperator);
NBSPEC_DEFINE_ERROR(DimensionMismatch);
NBSPEC_DEFINE_ERROR(NotRegular);
NBSPEC_DEFINE_ERROR(EnumerationBudget);
NBSPEC_DEFINE_ERROR(PreconditionTangled);
NBSPEC_DEFINE_ERROR(HypothesisFailed);
NBSPEC_DEFINE_ERROR(ContainmentViolation);
NBSPEC_DEFINE_ERROR(EmptySample);
NBSPEC_DEFINE_ERROR(PreconditionFailed);
NBSPEC_DEFINE_ERROR(InvalidPath);
NBSPEC_DEFINE_ERROR(IoFailure);

#undef NBSPEC_DEFINE_ERROR

}  // namespace nbspec
