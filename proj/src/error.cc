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


#include "policy_dyn/error.h"

#include <utility>

namespace policy_dyn {

DimensionError::DimensionError(const std::string& what, std::size_t expected,
                               std::size_t actual)
    : Error(what + ": expected size " + std::to_string(expected) +
            ", got " + std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

ConvergenceError::ConvergenceError(const std::string& what,
                                   std::vector<double> last_iterate,
                                   double residual)
    : Error(what + " (residual " + std::to_string(residual) + ")"),
      last_iterate_(std::move(last_iterate)),
      residual_(residual) {}

}  // namespace policy_dyn
