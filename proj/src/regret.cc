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


#include "policy_dyn/regret.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "policy_dyn/error.h"

namespace policy_dyn {
namespace {

// E_{q}[u_p(x, .)] for each own action x of p, where q is the opponent's
// marginal of `joint`.
std::vector<double> ActionValues(const Game& game, Player p,
                                 const JointDistribution& joint) {
  return game.ExpectedUtilityVector(p, joint.Marginal(Opponent(p)));
}

// Window of the reactive rule ending at 0-based round t with the current
// action replaced by `current`; rounds before the first read as 1.
std::vector<int> ReactiveWindow(const std::vector<std::size_t>& actions,
                                std::size_t t, int memory, int current) {
  std::vector<int> w(memory, 1);
  for (int k = 0; k + 1 < memory; ++k) {
    long idx = static_cast<long>(t) - (memory - 1) + k;
    if (idx >= 0) w[k] = static_cast<int>(actions[idx]);
  }
  w[memory - 1] = current;
  return w;
}

}  // namespace

JointDistribution PlayHistory::JointStrategy(std::size_t t) const {
  if (joints) return (*joints)[t];
  return ProductDistribution(strategies1[t], strategies2[t]);
}

void PlayHistory::Validate(const Game* game) const {
  const std::size_t t = T();
  auto check = [t](std::size_t n, const char* what) {
    if (n != t) throw DimensionError(std::string("history ") + what, t, n);
  };
  check(actions2.size(), "actions2");
  check(strategies1.size(), "strategies1");
  check(strategies2.size(), "strategies2");
  check(utility_trace1.size(), "utility_trace1");
  check(utility_trace2.size(), "utility_trace2");
  if (joints) check(joints->size(), "joints");
  for (std::size_t r = 0; r < t; ++r) {
    if (actions1[r] >= n1 || actions2[r] >= n2) {
      throw ValidationError("history action out of range at round " +
                            std::to_string(r + 1));
    }
  }
  if (game == nullptr) return;
  if (game->n1() != n1 || game->n2() != n2) {
    throw DimensionError("history joint size", game->num_joint(), n1 * n2);
  }
  for (std::size_t r = 0; r < t; ++r) {
    if (utility_trace1[r] != game->u1()(actions1[r], actions2[r]) ||
        utility_trace2[r] != game->u2()(actions1[r], actions2[r])) {
      throw ValidationError("utility trace disagrees with the game at round " +
                            std::to_string(r + 1));
    }
  }
}

double ExternalRegret(const PlayHistory& history, const Game& game,
                      Player player) {
  const std::size_t n = game.num_actions(player);
  std::vector<double> comparator(n, 0.0);
  double realized = 0.0;
  for (std::size_t t = 0; t < history.T(); ++t) {
    JointDistribution joint = history.JointStrategy(t);
    std::vector<double> values = ActionValues(game, player, joint);
    for (std::size_t a = 0; a < n; ++a) comparator[a] += values[a];
    realized += ExpectedUtility(joint, game, player);
  }
  double best = *std::max_element(comparator.begin(), comparator.end());
  return best - realized;
}

double ExternalRegretReactive(const PlayHistory& history,
                              const ReactiveUtility& rule) {
  const int m = rule.memory();
  double comparator[2] = {0.0, 0.0};
  double realized = 0.0;
  for (std::size_t t = 0; t < history.T(); ++t) {
    const MixedStrategy& p = history.strategies1[t];
    if (p.size() != 2) throw DimensionError("reactive strategy", 2, p.size());
    for (int a = 0; a < 2; ++a) {
      double v = rule.Evaluate(ReactiveWindow(history.actions1, t, m, a));
      comparator[a] += v;
      realized += p[a] * v;
    }
  }
  return std::max(comparator[0], comparator[1]) - realized;
}

double PolicyRegretReactive(const PlayHistory& history,
                            const ReactiveUtility& rule, int deviation,
                            int m) {
  if (m < 1) throw ValidationError("memory must be at least 1");
  if (deviation != 0 && deviation != 1) {
    throw ValidationError("reactive deviation must be 0 or 1");
  }
  const int memory = rule.memory();
  const int replaced = std::min(m, memory);
  double comparator = 0.0;
  double realized = 0.0;
  for (std::size_t t = 0; t < history.T(); ++t) {
    const MixedStrategy& p = history.strategies1[t];
    for (int a = 0; a < 2; ++a) {
      realized +=
          p[a] * rule.Evaluate(ReactiveWindow(history.actions1, t, memory, a));
    }
    std::vector<int> w = ReactiveWindow(history.actions1, t, memory, deviation);
    for (int k = memory - replaced; k < memory; ++k) w[k] = deviation;
    comparator += rule.Evaluate(w);
  }
  return comparator - realized;
}

// ------------------------------------------------------ DeviationTracker

DeviationTracker::DeviationTracker(const Game& game, Player deviating_player,
                                   int memory, double mix_weight)
    : game_(game),
      deviator_(deviating_player),
      memory_(memory),
      mix_weight_(mix_weight) {
  if (memory < 1) throw ValidationError("memory must be at least 1");
}

void DeviationTracker::BeginRound(const Learner& opponent,
                                  std::span<const double> realized_joint_sum) {
  if (realized_joint_sum.size() != game_.num_joint()) {
    throw DimensionError("realized joint sum", game_.num_joint(),
                         realized_joint_sum.size());
  }
  ++round_;
  ring_.push_back(Snapshot{
      opponent, std::vector<double>(realized_joint_sum.begin(),
                                    realized_joint_sum.end())});
  while (static_cast<int>(ring_.size()) > memory_ + 1) ring_.pop_front();
}

MixedStrategy DeviationTracker::Counterfactual(std::size_t deviation) const {
  if (ring_.empty()) throw InvariantError("Counterfactual before BeginRound");
  if (deviation >= game_.num_actions(deviator_)) {
    throw ValidationError("deviation action out of range");
  }
  const Player opp = Opponent(deviator_);
  const std::size_t n1 = game_.n1();
  const std::size_t n2 = game_.n2();
  // Front of the ring is the start of round max(1, t - m).
  const Snapshot& start = ring_.front();
  const int first = round_ - static_cast<int>(ring_.size()) + 1;
  Learner replica = start.opponent;
  std::vector<double> joint_sum = start.joint_sum;
  for (int s = first; s < round_; ++s) {
    MixedStrategy q = replica.Strategy();
    if (mix_weight_ > 0.0) q = MixWithUniform(q, mix_weight_);
    std::size_t own = replica.SampleAction(mix_weight_);
    Observation obs;
    obs.own_action = own;
    obs.opponent_action = deviation;
    obs.utilities = game_.UtilityVector(opp, deviation);
    obs.realized = obs.utilities[own];
    // Counterfactual joint of round s: delta_deviation x q.
    for (std::size_t x = 0; x < q.size(); ++x) {
      std::size_t k = deviator_ == Player::kOne ? JointIndex(deviation, x, n2)
                                                : JointIndex(x, deviation, n2);
      joint_sum[k] += q[x];
    }
    std::optional<JointDistribution> oracle;
    if (replica.NeedsOracle()) {
      oracle = JointDistribution::FromWeights(n1, n2, joint_sum);
    }
    replica.Update(obs, oracle);
  }
  MixedStrategy q = replica.Strategy();
  if (mix_weight_ > 0.0) q = MixWithUniform(q, mix_weight_);
  return q;
}

// ------------------------------------------------------ Trace and regret

DeviationTrace ComputeDeviationTrace(const PlayHistory& history,
                                     const Game& game, Player deviating_player,
                                     std::size_t deviation, int m,
                                     const OpponentReplayer& replayer) {
  history.Validate(&game);
  const Player opp = Opponent(deviating_player);
  const std::size_t n2 = game.n2();
  Learner opponent = Learner::Create(replayer.config, opp, game.n1(), n2,
                                     replayer.horizon);
  DeviationTracker tracker(game, deviating_player, m, replayer.mix_weight);
  DeviationTrace trace;
  trace.deviating_player = deviating_player;
  trace.deviation_action = deviation;
  trace.memory = m;
  std::vector<double> joint_sum(game.num_joint(), 0.0);
  const std::size_t dev_n = game.num_actions(deviating_player);
  for (std::size_t t = 0; t < history.T(); ++t) {
    tracker.BeginRound(opponent, joint_sum);
    MixedStrategy q = tracker.Counterfactual(deviation);
    JointDistribution joint =
        deviating_player == Player::kOne
            ? ProductDistribution(MixedStrategy::Dirac(dev_n, deviation), q)
            : ProductDistribution(q, MixedStrategy::Dirac(dev_n, deviation));
    trace.strategies.push_back(q);
    trace.joint.push_back(joint);

    // Advance the opponent along the realized history.
    std::size_t own = opponent.SampleAction(replayer.mix_weight);
    if (own != history.actions(opp)[t]) {
      throw InvariantError("opponent replay diverged from the history at round " +
                           std::to_string(t + 1));
    }
    std::size_t dev_action = history.actions(deviating_player)[t];
    JointDistribution realized = history.JointStrategy(t);
    for (std::size_t k = 0; k < joint_sum.size(); ++k) joint_sum[k] += realized[k];
    Observation obs;
    obs.own_action = own;
    obs.opponent_action = dev_action;
    obs.utilities = game.UtilityVector(opp, dev_action);
    obs.realized = obs.utilities[own];
    std::optional<JointDistribution> oracle;
    if (opponent.NeedsOracle()) {
      oracle = JointDistribution::FromWeights(game.n1(), n2, joint_sum);
    }
    opponent.Update(obs, oracle);
  }
  return trace;
}

JointDistribution DeviationEmpirical(const DeviationTrace& trace) {
  if (trace.joint.empty()) throw ValidationError("empty deviation trace");
  const std::size_t n1 = trace.joint[0].n1();
  const std::size_t n2 = trace.joint[0].n2();
  std::vector<double> sum(n1 * n2, 0.0);
  for (const auto& j : trace.joint)
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += j[k];
  for (double& v : sum) v /= static_cast<double>(trace.joint.size());
  return JointDistribution::FromWeights(n1, n2, sum);
}

double PolicyRegret(const PlayHistory& history, const Game& game,
                    Player player, std::size_t deviation, int m,
                    const OpponentReplayer* replayer) {
  if (replayer == nullptr) {
    throw ConfigError("policy regret in game mode needs an opponent replayer");
  }
  DeviationTrace trace =
      ComputeDeviationTrace(history, game, player, deviation, m, *replayer);
  double counterfactual = 0.0;
  double realized = 0.0;
  for (std::size_t t = 0; t < history.T(); ++t) {
    counterfactual += ExpectedUtility(trace.joint[t], game, player);
    realized += ExpectedUtility(history.JointStrategy(t), game, player);
  }
  return counterfactual - realized;
}

double PolicyRegretBound(const Game& game, Player player, double s_t,
                         double r_t) {
  if (s_t < 0.0 || r_t < 0.0) {
    throw ValidationError("stability and regret terms must be nonnegative");
  }
  return SpectralNorm(game.utility(player)) * s_t + r_t;
}

}  // namespace policy_dyn
