// Copyright 2026 The infomono Authors
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

#ifndef INFOMONO_ERRORS_H_
#define INFOMONO_ERRORS_H_

#include <stdexcept>
#include <string>

namespace infomono {

enum class ErrorCode {
  kNegativeEntry,
  kNonFiniteEntry,
  kRowSumViolation,
  kDimensionMismatch,
  kDimensionLimit,
  kInvalidPermutation,
  kIndexOutOfRange,
  kInvalidProbability,
  kActivationConditionFailed,
  kNumericallyIllConditioned,
  kNotBinary,
  kNotNormalized,
  kMlrpViolated,
  kDomainError,
  kPriorSupportError,
  kInvalidNestPartition,
  kInvalidXi,
  kDirectionInfeasible,
  kNotComparable,
  kWitnessInvalid,
  kIterationLimit,
  kUnknownCase,
  kUnknownFamily,
  kInvalidParameter,
  kParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }
  // The message without the code prefix that what() carries.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace infomono

#endif  // INFOMONO_ERRORS_H_
