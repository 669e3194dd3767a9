// Copyright 2026 The qemeta Authors.
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

#ifndef QEMETA_ERRORS_H_
#define QEMETA_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qemeta {

// Error categories. Each maps to a distinct CLI exit code.
enum class ErrorKind {
  kUsage = 2,            // bad flags or arguments
  kSchema = 3,           // malformed input, invariant violation in a file
  kCoverage = 4,         // not enough overlapping data to compute a statistic
  kInvalidArgument = 5,  // precondition on an in-memory value violated
  kIo = 6,               // file cannot be opened or written
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message)
      : Error(ErrorKind::kSchema, message) {}
};

class CoverageError : public Error {
 public:
  explicit CoverageError(const std::string& message)
      : Error(ErrorKind::kCoverage, message) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorKind::kInvalidArgument, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kIo, message) {}
};

}  // namespace qemeta

#endif  // QEMETA_ERRORS_H_
