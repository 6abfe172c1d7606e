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


#ifndef POLICY_DYN_EQUILIBRIA_H_
#define POLICY_DYN_EQUILIBRIA_H_

// Certification of coarse correlated equilibria and policy equilibria, and
// the finite-horizon slack diagnostic used in convergence experiments.

#include <cstddef>
#include <optional>
#include <vector>

#include "policy_dyn/game.h"
#include "policy_dyn/markov.h"
#include "policy_dyn/rng.h"

namespace policy_dyn {

// Default tolerance for exact or analytic inputs.
inline constexpr double kExactTolerance = 1e-8;
// Default tolerance for distributions estimated from finite play.
inline constexpr double kEmpiricalTolerance = 0.05;

struct DeviationSlack {
  Player player = Player::kOne;
  std::size_t deviation = 0;
  // E_deviation[u_player] - E_sigma[u_player].
  double slack = 0.0;
};

struct EquilibriumVerdict {
  bool is_equilibrium = false;
  std::optional<JointDistribution> witness;
  // One entry per (player, deviation action).
  std::vector<DeviationSlack> slacks;
  // Entries of `slacks` above the tolerance.
  std::vector<DeviationSlack> violations;
};

// Unilateral fixed-action deviations against the joint: for player 1 the
// deviation value of a' is E_{(a,b)~sigma}[u1(a', b)]. The witness is sigma
// when it is a CCE.
EquilibriumVerdict IsCce(const JointDistribution& sigma, const Game& game,
                         double tol = kExactTolerance);

struct PolicyEquilibriumOptions {
  // Among feasible stationary points prefer the one maximizing
  // E[u1] + E[u2].
  bool maximize_welfare = false;
};

// Searches the stationary polytope of the chain induced by pi for a sigma
// that beats every constant deviation's constructive stationary value up to
// tol. When none exists the reported slacks are taken at the stationary
// point that maximizes the smallest margin.
EquilibriumVerdict IsPolicyEquilibrium(
    const FunctionPairDistribution& pi, const Game& game,
    double tol = kExactTolerance, const PolicyEquilibriumOptions& options = {});

// Deviation distributions of both players, indexed by action.
struct DeviationDistributions {
  std::vector<JointDistribution> player1;
  std::vector<JointDistribution> player2;
};

// max over players and deviations of E_dev[u] - E_sigma_hat[u].
double EquilibriumSlack(const JointDistribution& sigma_hat,
                        const DeviationDistributions& deviations,
                        const Game& game);

// A vertex of the CCE polytope minimizing `objective . sigma`.
JointDistribution FindCce(const Game& game, const std::vector<double>& objective);

// A CCE minimizing an objective drawn uniformly from [-1,1]^|A|.
JointDistribution RandomCce(const Game& game, Rng& rng);

}  // namespace policy_dyn

#endif  // POLICY_DYN_EQUILIBRIA_H_
