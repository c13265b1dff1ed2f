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

#ifndef TAT_ERROR_H_
#define TAT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tat {

// Error classes surfaced by the library. The C API maps each one onto a
// stable tat_status value, so the order here must not change.
enum class ErrorCode {
  kIo = 1,
  kEncoding,
  kMarkerCollision,
  kConfig,
  kCoverage,
  kDisconnectedLattice,
  kUnknownTokenId,
  kZeroLength,
  kDuplicateToken,
  kSegmentationFailure,
  kDimensionMismatch,
  kPlanGap,
  kEmptyInput,
  kValidation,
  kFormat,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void throw_error(ErrorCode code, const std::string& message);

}  // namespace tat

#endif  // TAT_ERROR_H_
