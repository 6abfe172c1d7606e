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


#ifndef POLICY_DYN_REGRET_H_
#define POLICY_DYN_REGRET_H_

// External regret, m-memory policy regret and the counterfactual
// distributions obtained by replaying the opponent's learner with the
// deviating player's recent actions replaced.
//
// Counterfactual convention in game mode: the opponent's strategy at round t
// is recomputed after replacing the deviating player's actions in rounds
// max(1, t-m) .. t-1 by the deviation action. For t <= m this replaces the
// whole prefix; at t = 1 the counterfactual equals the realized strategy.

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "policy_dyn/game.h"
#include "policy_dyn/learners.h"

namespace policy_dyn {

struct PlayHistory {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::vector<std::size_t> actions1;
  std::vector<std::size_t> actions2;
  std::vector<MixedStrategy> strategies1;
  std::vector<MixedStrategy> strategies2;
  std::vector<double> utility_trace1;
  std::vector<double> utility_trace2;
  // Per-round joint strategy when play was correlated; when absent the joint
  // strategy of round t is strategies1[t] x strategies2[t].
  std::optional<std::vector<JointDistribution>> joints;

  std::size_t T() const { return actions1.size(); }
  // 0-based round index.
  JointDistribution JointStrategy(std::size_t t) const;
  const std::vector<MixedStrategy>& strategies(Player p) const {
    return p == Player::kOne ? strategies1 : strategies2;
  }
  const std::vector<std::size_t>& actions(Player p) const {
    return p == Player::kOne ? actions1 : actions2;
  }
  // Checks sequence lengths and, when a game is given, that the utility
  // traces match the game lookups.
  void Validate(const Game* game = nullptr) const;
};

struct DeviationTrace {
  Player deviating_player = Player::kOne;
  std::size_t deviation_action = 0;
  int memory = 1;
  // Counterfactual opponent strategies, one per round.
  std::vector<MixedStrategy> strategies;
  // delta_deviation x counterfactual opponent strategy, one per round.
  std::vector<JointDistribution> joint;
};

// Everything needed to rebuild the opponent's learner from scratch.
struct OpponentReplayer {
  LearnerConfig config;
  int horizon = 0;
  // Uniform mixing applied to every played strategy (0 when unperturbed).
  double mix_weight = 0.0;
};

// max_a sum_t [E_{q_t} u_p(a, .) - E_{p_t} u_p], where q_t is the opponent's
// strategy (its marginal of the joint) at round t.
double ExternalRegret(const PlayHistory& history, const Game& game,
                      Player player);

// Player 1 against a reactive utility sequence. The realized term of round t
// is E_{a ~ p_t} f(a_{t-m+1..t-1}, a) over the realized prefix; the
// comparator for action a replaces only position t. Rounds before the first
// are padded with action 1.
double ExternalRegretReactive(const PlayHistory& history,
                              const ReactiveUtility& rule);

// Comparator replaces the last min(m, t) window positions with `deviation`.
// With m equal to the rule's memory this is f(a, ..., a) every round.
double PolicyRegretReactive(const PlayHistory& history,
                            const ReactiveUtility& rule, int deviation, int m);

// sum_t E_{(p_a)_t} u_p - sum_t E_{p_t} u_p. Throws ConfigError when
// `replayer` is null.
double PolicyRegret(const PlayHistory& history, const Game& game,
                    Player player, std::size_t deviation, int m,
                    const OpponentReplayer* replayer);

// Replays the opponent from its seed along the realized history and records
// the counterfactual strategies. Throws InvariantError when the replayed
// opponent does not reproduce its realized actions.
DeviationTrace ComputeDeviationTrace(const PlayHistory& history,
                                     const Game& game, Player deviating_player,
                                     std::size_t deviation, int m,
                                     const OpponentReplayer& replayer);

// Average of the trace's per-round joints.
JointDistribution DeviationEmpirical(const DeviationTrace& trace);

// ||u_p||_2 * S_T + R_T.
double PolicyRegretBound(const Game& game, Player player, double s_t,
                         double r_t);

// Incremental counterfactual engine for one deviating player. Keeps the
// opponent's states at the start of the last m+1 rounds together with the
// realized cumulative joint sums, which double as the empirical-distribution
// oracle for tracking opponents.
class DeviationTracker {
 public:
  DeviationTracker(const Game& game, Player deviating_player, int memory,
                   double mix_weight);

  // Registers the opponent's state at the start of the upcoming round and
  // the sum of the realized joint strategies of all earlier rounds.
  void BeginRound(const Learner& opponent,
                  std::span<const double> realized_joint_sum);

  // Counterfactual opponent strategy for the current round (after mixing),
  // had the deviating player played `deviation` in the replaced rounds.
  MixedStrategy Counterfactual(std::size_t deviation) const;

  // 1-based index of the current round.
  int round() const { return round_; }

 private:
  struct Snapshot {
    Learner opponent;
    std::vector<double> joint_sum;
  };
  Game game_;
  Player deviator_;
  int memory_;
  double mix_weight_;
  int round_ = 0;
  std::deque<Snapshot> ring_;
};

}  // namespace policy_dyn

#endif  // POLICY_DYN_REGRET_H_
