// Copyright 2026 The Authors.
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

#include "fair_ksub/error.h"

namespace fair_ksub {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContractViolation:
      return "contract violation";
    case ErrorCode::kConfig:
      return "config error";
    case ErrorCode::kLowerSumExceedsBudget:
      return "lower bounds exceed budget";
    case ErrorCode::kUpperSumBelowBudget:
      return "upper bounds below budget";
    case ErrorCode::kInvalidBounds:
      return "invalid bounds";
    case ErrorCode::kInvalidParameter:
      return "invalid parameter";
    case ErrorCode::kInfeasible:
      return "infeasible";
    case ErrorCode::kInstanceTooLarge:
      return "instance too large";
    case ErrorCode::kParse:
      return "parse error";
    case ErrorCode::kValidation:
      return "validation error";
    case ErrorCode::kDegenerateData:
      return "degenerate data";
    case ErrorCode::kIo:
      return "io error";
  }
  return "error";
}

}  // namespace fair_ksub
