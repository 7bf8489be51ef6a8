// Copyright 2026 The trajbench Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace trajbench {

enum class ErrorKind {
  kInvalidArgument,
  kInvalidMap,
  kDegenerateHeading,
  kTooShort,
  kShape,
  kInsufficientModes,
  kSchema,
  kDataConsistency,
  kInvariant,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kInvalidMap: return "invalid map";
    case ErrorKind::kDegenerateHeading: return "degenerate heading";
    case ErrorKind::kTooShort: return "too short for acceleration";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kInsufficientModes: return "insufficient modes";
    case ErrorKind::kSchema: return "schema error";
    case ErrorKind::kDataConsistency: return "data consistency error";
    case ErrorKind::kInvariant: return "internal invariant failure";
  }
  return "unknown error";
}

// Library failure with a kind; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace trajbench
