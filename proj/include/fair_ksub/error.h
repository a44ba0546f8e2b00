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

#ifndef FAIR_KSUB_ERROR_H_
#define FAIR_KSUB_ERROR_H_

#include <stdexcept>
#include <string>

namespace fair_ksub {

enum class ErrorCode {
  kContractViolation,
  kConfig,
  kLowerSumExceedsBudget,
  kUpperSumBelowBudget,
  kInvalidBounds,
  kInvalidParameter,
  kInfeasible,
  kInstanceTooLarge,
  kParse,
  kValidation,
  kDegenerateData,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. The code lets
// callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fair_ksub

#endif  // FAIR_KSUB_ERROR_H_
