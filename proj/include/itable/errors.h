// Copyright 2026 The itable Authors.
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

#ifndef ITABLE_ERRORS_H_
#define ITABLE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace itable {

// Error hierarchy. The CLI maps each family onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters: n out of range, negative thresholds, empty grids.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or non-finite input data, including file parse failures.
class DataError : public Error {
 public:
  using Error::Error;
};

// Two operands disagree on the number of variables.
// Table files: a mask is absent, repeated, or a field does not parse.
class CompletenessError : public DataError {
 public:
  using DataError::DataError;
};

class DuplicateError : public DataError {
 public:
  using DataError::DataError;
};

class ParseError : public DataError {
 public:
  using DataError::DataError;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Factorization failure, non-finite gradient, capacity overrun.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A checked theoretical invariant did not hold within tolerance.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace itable

#endif  // ITABLE_ERRORS_H_
