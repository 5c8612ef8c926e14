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

#include "infomono/errors.h"

#include <cmath>
#include <limits>

#include "infomono/numeric.h"

namespace infomono {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kRowSumViolation: return "RowSumViolation";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDimensionLimit: return "DimensionLimit";
    case ErrorCode::kInvalidPermutation: return "InvalidPermutation";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kActivationConditionFailed: return "ActivationConditionFailed";
    case ErrorCode::kNumericallyIllConditioned: return "NumericallyIllConditioned";
    case ErrorCode::kNotBinary: return "NotBinary";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kMlrpViolated: return "MLRPViolated";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kPriorSupportError: return "PriorSupportError";
    case ErrorCode::kInvalidNestPartition: return "InvalidNestPartition";
    case ErrorCode::kInvalidXi: return "InvalidXi";
    case ErrorCode::kDirectionInfeasible: return "DirectionInfeasible";
    case ErrorCode::kNotComparable: return "NotComparable";
    case ErrorCode::kWitnessInvalid: return "WitnessInvalid";
    case ErrorCode::kIterationLimit: return "IterationLimit";
    case ErrorCode::kUnknownCase: return "UnknownCase";
    case ErrorCode::kUnknownFamily: return "UnknownFamily";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), message_(message) {}

double Tolerances::equality_bound(double value) const {
  return equality * (1.0 + std::abs(value));
}

double ratio(double x, double y) {
  if (y == 0.0) return x > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  return x / y;
}

}  // namespace infomono
