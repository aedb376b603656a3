// Copyright 2026 The dpconsensus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DPC_ERROR_HPP_
#define DPC_ERROR_HPP_

#include <limits>
#include <stdexcept>
#include <string>

namespace dpc {

// Failure categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  kValidation = 2,   // bad config, precondition or dimension violation
  kInfeasible = 3,   // divergent privacy series, infeasible design
  kNumeric = 4,      // eigensolver failure, overflow, I/O
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorKind::kValidation, what) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what)
      : Error(ErrorKind::kInfeasible, what) {}
  // `margin` is the amount by which a feasibility inequality is violated.
  InfeasibleError(const std::string& what, double margin)
      : Error(ErrorKind::kInfeasible, what), margin_(margin) {}

  double margin() const { return margin_; }

 private:
  double margin_ = std::numeric_limits<double>::quiet_NaN();
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorKind::kNumeric, what) {}
};

}  // namespace dpc

#endif  // DPC_ERROR_HPP_
