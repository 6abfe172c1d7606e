// Copyright 2026 The policy-dyn Authors. All rights reserved.
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

#ifndef POLICY_DYN_ERROR_H_
#define POLICY_DYN_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace policy_dyn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input data: utilities outside [0,1], non-simplex vectors, bad
// action indices and similar.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  DimensionError(const std::string& what, std::size_t expected,
                 std::size_t actual);

  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

// An iterative method stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   double residual);

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

// Bad run configuration or CLI arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A broken internal guarantee, i.e. a bug rather than bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Function-space enumeration refused because it exceeds the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace policy_dyn

#endif  // POLICY_DYN_ERROR_H_
