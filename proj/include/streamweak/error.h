// Copyright 2026 The streamweak Authors
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

#ifndef STREAMWEAK_ERROR_H_
#define STREAMWEAK_ERROR_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace streamweak {

// Error categories. The C API maps these one-to-one onto status codes.
enum class ErrorCode : int {
  kParameter = 1,     // invalid argument or configuration
  kPrecondition = 2,  // caller broke an operation's precondition
  kStream = 3,        // malformed stream (duplicates, out-of-range ids)
  kCapacity = 4,      // enumeration guard exceeded
  kOracle = 5,        // oracle returned an invalid value or broke protocol
  kConnection = 6,    // external oracle could not be started
  kIo = 7,            // file system errors
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorCode::kParameter, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::kPrecondition, what) {}
};

class StreamError : public Error {
 public:
  explicit StreamError(const std::string& what)
      : Error(ErrorCode::kStream, what) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(ErrorCode::kCapacity, what) {}
};

class OracleError : public Error {
 public:
  explicit OracleError(const std::string& what)
      : Error(ErrorCode::kOracle, what) {}
};

// Raised when an oracle returns NaN, infinity or a negative value. Carries
// the subset that produced it (sorted ids).
class OracleViolation : public OracleError {
 public:
  OracleViolation(const std::string& what, std::vector<std::uint32_t> subset,
                  double value)
      : OracleError(what), subset_(std::move(subset)), value_(value) {}
  const std::vector<std::uint32_t>& subset() const { return subset_; }
  double value() const { return value_; }

 private:
  std::vector<std::uint32_t> subset_;
  double value_;
};

class ConnectionError : public Error {
 public:
  explicit ConnectionError(const std::string& what)
      : Error(ErrorCode::kConnection, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

}  // namespace streamweak

#endif  // STREAMWEAK_ERROR_H_
