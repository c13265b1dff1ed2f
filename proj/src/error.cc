// Copyright 2026 The TAT Authors
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

#include "tat/error.h"

namespace tat {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IOError";
    case ErrorCode::kEncoding: return "EncodingError";
    case ErrorCode::kMarkerCollision: return "MarkerCollision";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kCoverage: return "CoverageError";
    case ErrorCode::kDisconnectedLattice: return "DisconnectedLattice";
    case ErrorCode::kUnknownTokenId: return "UnknownTokenId";
    case ErrorCode::kZeroLength: return "ZeroLength";
    case ErrorCode::kDuplicateToken: return "DuplicateToken";
    case ErrorCode::kSegmentationFailure: return "SegmentationFailure";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kPlanGap: return "PlanGap";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tat
