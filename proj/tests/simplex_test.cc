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


#include "policy_dyn/simplex.h"

#include "gtest/gtest.h"
#include "policy_dyn/error.h"
#include "policy_dyn/rng.h"

namespace policy_dyn {
namespace {

using S = ConstraintSense;

TEST(SimplexTest, TwoVariableOptimum) {
  LinearProgram lp(2);
  lp.SetObjective({-1, -1});
  lp.AddConstraint({1, 2}, S::kLessEqual, 4);
  lp.AddConstraint({3, 1}, S::kLessEqual, 6);
  LpResult r = lp.Solve();
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.x[0], 1.6, 1e-12);
  EXPECT_NEAR(r.x[1], 1.2, 1e-12);
  EXPECT_NEAR(r.objective, -2.8, 1e-12);
}

TEST(SimplexTest, EqualityAndGreaterEqual) {
  // min x + 2y + 3z, x + y + z = 1, y >= 0.25, z >= 0.5 - x.
  LinearProgram lp(3);
  lp.SetObjective({1, 2, 3});
  lp.AddConstraint({1, 1, 1}, S::kEqual, 1);
  lp.AddConstraint({0, 1, 0}, S::kGreaterEqual, 0.25);
  lp.AddConstraint({1, 0, 1}, S::kGreaterEqual, 0.5);
  LpResult r = lp.Solve();
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 0.75 + 0.5, 1e-12);
  EXPECT_NEAR(r.x[0], 0.75, 1e-12);
}

TEST(SimplexTest, NegativeRightHandSide) {
  LinearProgram lp(1);
  lp.SetObjective({1});
  lp.AddConstraint({-1}, S::kLessEqual, -2);
  LpResult r = lp.Solve();
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.x[0], 2.0, 1e-12);
}

TEST(SimplexTest, Infeasible) {
  LinearProgram lp(1);
  lp.AddConstraint({1}, S::kGreaterEqual, 2);
  lp.AddConstraint({1}, S::kLessEqual, 1);
  EXPECT_EQ(lp.Solve().status, LpStatus::kInfeasible);
}

TEST(SimplexTest, Unbounded) {
  LinearProgram lp(2);
  lp.SetObjective({-1, 0});
  lp.AddConstraint({0, 1}, S::kLessEqual, 1);
  EXPECT_EQ(lp.Solve().status, LpStatus::kUnbounded);
}

TEST(SimplexTest, BealeCyclingExampleTerminates) {
  LinearProgram lp(4);
  lp.SetObjective({-0.75, 150, -0.02, 6});
  lp.AddConstraint({0.25, -60, -0.04, 9}, S::kLessEqual, 0);
  lp.AddConstraint({0.5, -90, -0.02, 3}, S::kLessEqual, 0);
  lp.AddConstraint({0, 0, 1, 0}, S::kLessEqual, 1);
  LpResult r = lp.Solve();
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -0.05, 1e-12);
  EXPECT_NEAR(r.x[0], 0.04, 1e-12);
  EXPECT_NEAR(r.x[2], 1.0, 1e-12);
}

TEST(SimplexTest, RedundantEqualities) {
  LinearProgram lp(2);
  lp.SetObjective({1, -1});
  lp.AddConstraint({1, 1}, S::kEqual, 1);
  lp.AddConstraint({2, 2}, S::kEqual, 2);
  LpResult r = lp.Solve();
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.x[1], 1.0, 1e-12);
}

TEST(SimplexTest, DimensionChecks) {
  LinearProgram lp(2);
  EXPECT_THROW(lp.SetObjective({1}), DimensionError);
  EXPECT_THROW(lp.AddConstraint({1, 2, 3}, S::kEqual, 0), DimensionError);
}

// Random feasible box-constrained problems: the optimum of a separable
// objective over a box plus a loose budget is available in closed form.
TEST(SimplexTest, RandomBoxes) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 6;
    LinearProgram lp(n);
    std::vector<double> c(n), ub(n);
    double expected = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = rng.Uniform() * 2 - 1;
      ub[i] = 0.1 + rng.Uniform();
      std::vector<double> row(n, 0.0);
      row[i] = 1.0;
      lp.AddConstraint(row, S::kLessEqual, ub[i]);
      if (c[i] < 0) expected += c[i] * ub[i];
    }
    lp.AddConstraint(std::vector<double>(n, 1.0), S::kLessEqual, 1e6);
    lp.SetObjective(c);
    LpResult r = lp.Solve();
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    EXPECT_NEAR(r.objective, expected, 1e-10);
  }
}

}  // namespace
}  // namespace policy_dyn
