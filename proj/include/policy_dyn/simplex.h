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


#ifndef POLICY_DYN_SIMPLEX_H_
#define POLICY_DYN_SIMPLEX_H_

// Dense two-phase simplex for small linear programs:
//
//   minimize c.x  subject to  A x (<= | = | >=) b,  x >= 0.
//
// Bland's rule is used for both the entering and the leaving variable, which
// rules out cycling on the degenerate polytopes that equilibrium problems
// produce.

#include <cstddef>
#include <string>
#include <vector>

namespace policy_dyn {

enum class ConstraintSense { kLessEqual, kEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string LpStatusName(LpStatus status);

struct LpOptions {
  double pivot_tolerance = 1e-11;
  // Phase-one objective above this value means infeasible.
  double feasibility_tolerance = 1e-9;
  int max_iterations = 100000;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_constraints() const { return rows_.size(); }

  // Minimization objective; defaults to zero (pure feasibility).
  void SetObjective(std::vector<double> c);
  void AddConstraint(std::vector<double> coefficients, ConstraintSense sense,
                     double rhs);

  // Throws ConvergenceError when the iteration cap is hit.
  LpResult Solve(const LpOptions& options = {}) const;

 private:
  struct Row {
    std::vector<double> a;
    ConstraintSense sense;
    double b;
  };
  std::size_t num_vars_;
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

}  // namespace policy_dyn

#endif  // POLICY_DYN_SIMPLEX_H_
