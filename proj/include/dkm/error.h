/*
 * Copyright 2026 The DKM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DKM_ERROR_H_
#define DKM_ERROR_H_

#include <stdexcept>
#include <string>

namespace dkm {

// Error categories. The numeric values double as CLI exit codes.
enum class ErrorCode : int {
  kInternal = 1,
  kConfig = 2,
  kData = 3,
  kDegenerate = 4,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void ThrowConfigError(const std::string& message) {
  throw Error(ErrorCode::kConfig, message);
}
[[noreturn]] inline void ThrowDataError(const std::string& message) {
  throw Error(ErrorCode::kData, message);
}
[[noreturn]] inline void ThrowDegenerate(const std::string& message) {
  throw Error(ErrorCode::kDegenerate, message);
}

}  // namespace dkm

#endif  // DKM_ERROR_H_
