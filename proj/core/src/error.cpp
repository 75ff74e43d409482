//
// Copyright 2026 The privauction Authors
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
//

#include "privauction/error.hpp"

namespace privauction {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kValidation:
      return "ValidationError";
    case ErrorCode::kEmptyInstance:
      return "EmptyInstance";
    case ErrorCode::kNotCanonical:
      return "NotCanonical";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kInstanceTooLarge:
      return "InstanceTooLarge";
    case ErrorCode::kNonUniformWeights:
      return "NonUniformWeights";
    case ErrorCode::kParameterOutOfRange:
      return "ParameterOutOfRange";
    case ErrorCode::kAssumptionViolated:
      return "AssumptionViolated";
    case ErrorCode::kDegenerateAllOnes:
      return "DegenerateAllOnes";
    case ErrorCode::kKOutOfRange:
      return "KOutOfRange";
    case ErrorCode::kDegenerateKernelMass:
      return "DegenerateKernelMass";
    case ErrorCode::kSingularSystem:
      return "SingularSystem";
    case ErrorCode::kArithmeticOverflow:
      return "ArithmeticOverflow";
    case ErrorCode::kInvariantViolation:
      return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace privauction
