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


#include "policy_dyn/equilibria.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "policy_dyn/error.h"
#include "policy_dyn/simplex.h"

namespace policy_dyn {
namespace {

void FillViolations(EquilibriumVerdict& v, double tol) {
  for (const auto& s : v.slacks) {
    if (s.slack > tol) v.violations.push_back(s);
  }
}

// Deviation values E_{sigma_a}[u_p] for every action of p.
std::vector<double> PolicyDeviationValues(const FunctionPairDistribution& pi,
                                          const Game& game, Player p) {
  std::vector<double> values;
  for (std::size_t a = 0; a < game.num_actions(p); ++a) {
    values.push_back(ExpectedUtility(DeviationStationary(pi, p, a), game, p));
  }
  return values;
}

std::vector<DeviationSlack> SlacksAgainst(const JointDistribution& sigma,
                                          const Game& game,
                                          const std::vector<double>& v1,
                                          const std::vector<double>& v2) {
  std::vector<DeviationSlack> out;
  const double e1 = ExpectedUtility(sigma, game, Player::kOne);
  const double e2 = ExpectedUtility(sigma, game, Player::kTwo);
  for (std::size_t a = 0; a < v1.size(); ++a) out.push_back({Player::kOne, a, v1[a] - e1});
  for (std::size_t b = 0; b < v2.size(); ++b) out.push_back({Player::kTwo, b, v2[b] - e2});
  return out;
}

LpResult MaxMinMarginLp(const TransitionMatrix& m, const Game& game,
                        const std::vector<double>& v1,
                        const std::vector<double>& v2, double equality_tolerance);

// Stationary point of m maximizing min_k (u_k . sigma - v_k). Variables are
// sigma and z' = z + 2 >= 0, which keeps the margin variable nonnegative.
JointDistribution MaxMinMarginStationary(const TransitionMatrix& m,
                                         const Game& game,
                                         const std::vector<double>& v1,
                                         const std::vector<double>& v2,
                                         double equality_tolerance) {
  // Exact stationarity first; the relaxed pairs only when that fails.
  for (double tol : {0.0, equality_tolerance}) {
    LpResult res = MaxMinMarginLp(m, game, v1, v2, tol);
    if (res.status == LpStatus::kOptimal) {
      res.x.resize(m.dim());
      return JointDistribution::FromWeights(m.n1(), m.n2(), res.x);
    }
    if (tol == equality_tolerance) {
      throw ConvergenceError("max-min margin LP ended " + LpStatusName(res.status),
                             res.x, std::numeric_limits<double>::quiet_NaN());
    }
  }
  throw InvariantError("unreachable");
}

LpResult MaxMinMarginLp(const TransitionMatrix& m, const Game& game,
                        const std::vector<double>& v1,
                        const std::vector<double>& v2, double equality_tolerance) {
  const std::size_t dim = m.dim();
  const std::size_t z = dim;
  LinearProgram lp(dim + 1);
  std::vector<double> c(dim + 1, 0.0);
  c[z] = -1.0;
  lp.SetObjective(c);
  std::vector<double> sum(dim + 1, 1.0);
  sum[z] = 0.0;
  lp.AddConstraint(sum, ConstraintSense::kEqual, 1.0);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> row(dim + 1, 0.0);
    for (std::size_t i = 0; i < dim; ++i) row[i] = m(i, j);
    row[j] -= 1.0;
    if (equality_tolerance == 0.0) {
      lp.AddConstraint(row, ConstraintSense::kEqual, 0.0);
    } else {
      lp.AddConstraint(row, ConstraintSense::kLessEqual, equality_tolerance);
      lp.AddConstraint(row, ConstraintSense::kGreaterEqual, -equality_tolerance);
    }
  }
  auto add_margin = [&](const Matrix& u, double value) {
    std::vector<double> row(dim + 1, 0.0);
    for (std::size_t k = 0; k < dim; ++k) row[k] = u.data()[k];
    row[z] = -1.0;
    lp.AddConstraint(row, ConstraintSense::kGreaterEqual, value - 2.0);
  };
  for (double v : v1) add_margin(game.u1(), v);
  for (double v : v2) add_margin(game.u2(), v);
  std::vector<double> cap(dim + 1, 0.0);
  cap[z] = 1.0;
  lp.AddConstraint(cap, ConstraintSense::kLessEqual, 4.0);
  return lp.Solve();
}

}  // namespace

EquilibriumVerdict IsCce(const JointDistribution& sigma, const Game& game,
                         double tol) {
  if (sigma.size() != game.num_joint() || sigma.n2() != game.n2()) {
    throw DimensionError("CCE candidate", game.num_joint(), sigma.size());
  }
  EquilibriumVerdict v;
  const double e1 = ExpectedUtility(sigma, game, Player::kOne);
  const double e2 = ExpectedUtility(sigma, game, Player::kTwo);
  std::vector<double> d1 =
      game.ExpectedUtilityVector(Player::kOne, sigma.Marginal(Player::kTwo));
  std::vector<double> d2 =
      game.ExpectedUtilityVector(Player::kTwo, sigma.Marginal(Player::kOne));
  for (std::size_t a = 0; a < d1.size(); ++a) v.slacks.push_back({Player::kOne, a, d1[a] - e1});
  for (std::size_t b = 0; b < d2.size(); ++b) v.slacks.push_back({Player::kTwo, b, d2[b] - e2});
  FillViolations(v, tol);
  v.is_equilibrium = v.violations.empty();
  if (v.is_equilibrium) v.witness = sigma;
  return v;
}

EquilibriumVerdict IsPolicyEquilibrium(const FunctionPairDistribution& pi,
                                       const Game& game, double tol,
                                       const PolicyEquilibriumOptions& options) {
  if (pi.n1() != game.n1() || pi.n2() != game.n2()) {
    throw DimensionError("function-pair distribution joint size",
                         game.num_joint(), pi.n1() * pi.n2());
  }
  const std::vector<double> v1 = PolicyDeviationValues(pi, game, Player::kOne);
  const std::vector<double> v2 = PolicyDeviationValues(pi, game, Player::kTwo);
  const TransitionMatrix m = InducedChain(pi);

  std::vector<LinearInequality> constraints;
  const auto& u1 = game.u1().data();
  const auto& u2 = game.u2().data();
  for (double v : v1) constraints.push_back({u1, v - tol});
  for (double v : v2) constraints.push_back({u2, v - tol});
  ConstrainedStationaryOptions lp_options;
  if (options.maximize_welfare) {
    std::vector<double> welfare(u1.size());
    for (std::size_t k = 0; k < u1.size(); ++k) welfare[k] = u1[k] + u2[k];
    lp_options.objective = welfare;
  }

  EquilibriumVerdict verdict;
  std::optional<JointDistribution> sigma =
      SolveConstrainedStationary(m, constraints, lp_options);
  if (sigma) {
    verdict.slacks = SlacksAgainst(*sigma, game, v1, v2);
    FillViolations(verdict, tol);
    verdict.is_equilibrium = true;
    verdict.witness = *sigma;
    // LP slack can leave violations within the feasibility tolerance.
    verdict.violations.clear();
    return verdict;
  }
  JointDistribution best = MaxMinMarginStationary(
      m, game, v1, v2, lp_options.equality_tolerance);
  verdict.slacks = SlacksAgainst(best, game, v1, v2);
  FillViolations(verdict, tol);
  verdict.is_equilibrium = false;
  return verdict;
}

double EquilibriumSlack(const JointDistribution& sigma_hat,
                        const DeviationDistributions& deviations,
                        const Game& game) {
  if (deviations.player1.size() != game.n1()) {
    throw DimensionError("player-1 deviation distributions", game.n1(),
                         deviations.player1.size());
  }
  if (deviations.player2.size() != game.n2()) {
    throw DimensionError("player-2 deviation distributions", game.n2(),
                         deviations.player2.size());
  }
  const double e1 = ExpectedUtility(sigma_hat, game, Player::kOne);
  const double e2 = ExpectedUtility(sigma_hat, game, Player::kTwo);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& d : deviations.player1)
    worst = std::max(worst, ExpectedUtility(d, game, Player::kOne) - e1);
  for (const auto& d : deviations.player2)
    worst = std::max(worst, ExpectedUtility(d, game, Player::kTwo) - e2);
  return worst;
}

JointDistribution FindCce(const Game& game, const std::vector<double>& objective) {
  const std::size_t n1 = game.n1();
  const std::size_t n2 = game.n2();
  const std::size_t dim = n1 * n2;
  LinearProgram lp(dim);
  lp.SetObjective(objective);
  lp.AddConstraint(std::vector<double>(dim, 1.0), ConstraintSense::kEqual, 1.0);
  for (std::size_t dev = 0; dev < n1; ++dev) {
    std::vector<double> row(dim);
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        row[JointIndex(a, b, n2)] = game.u1()(a, b) - game.u1()(dev, b);
    lp.AddConstraint(row, ConstraintSense::kGreaterEqual, 0.0);
  }
  for (std::size_t dev = 0; dev < n2; ++dev) {
    std::vector<double> row(dim);
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        row[JointIndex(a, b, n2)] = game.u2()(a, b) - game.u2()(a, dev);
    lp.AddConstraint(row, ConstraintSense::kGreaterEqual, 0.0);
  }
  LpResult res = lp.Solve();
  if (res.status != LpStatus::kOptimal) {
    // Every finite game has a Nash equilibrium, hence a CCE.
    throw InvariantError("CCE LP ended " + LpStatusName(res.status));
  }
  return JointDistribution::FromWeights(n1, n2, res.x);
}

JointDistribution RandomCce(const Game& game, Rng& rng) {
  std::vector<double> c(game.num_joint());
  for (double& v : c) v = 2.0 * rng.Uniform() - 1.0;
  return FindCce(game, c);
}

}  // namespace policy_dyn
