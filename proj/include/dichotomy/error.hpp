// Copyright 2026 The Dichotomy Authors
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

namespace dichotomy {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorCode : int {
  Validation = 2,
  Infinite = 3,
  Precondition = 4,
  NearCritical = 5,
  Numerical = 6,
  Io = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed input: bad dimensions, non-states, parameters out of range.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::Validation, what) {}
};

/// A function was asked to evaluate outside its domain (e.g. log at a kept
/// zero eigenvalue).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::Validation, what) {}
};

/// A sufficient condition for channel synthesis does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::Precondition, what) {}
};

/// The requested rate sits inside the guard band around the critical rate.
class NearCriticalError : public Error {
 public:
  NearCriticalError(const std::string& what, double lambda1, double lambda2)
      : Error(ErrorCode::NearCritical, what),
        lambda1_(lambda1),
        lambda2_(lambda2) {}
  double lambda1() const noexcept { return lambda1_; }
  double lambda2() const noexcept { return lambda2_; }

 private:
  double lambda1_;
  double lambda2_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCode::Numerical, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace dichotomy
