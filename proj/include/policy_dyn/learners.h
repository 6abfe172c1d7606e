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


#ifndef POLICY_DYN_LEARNERS_H_
#define POLICY_DYN_LEARNERS_H_

// Online learners for one player of a repeated game. Every learner is a
// deterministic function of its seed and the observations it receives, so a
// copy taken at any round can be advanced on a different history to obtain
// counterfactual strategies.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "policy_dyn/game.h"
#include "policy_dyn/rng.h"

namespace policy_dyn {

enum class LearnerKind { kMwu, kExp3, kFixed, kCceTracker };

std::string LearnerKindName(LearnerKind kind);

// ------------------------------------------------------------------ MWU

struct MwuState {
  std::vector<double> weights;  // normalized, all > 0
  double eta = 0.0;
  int step = 0;
};

MwuState MakeMwuState(std::size_t num_actions, double eta);

// w'_i = w_i exp(eta u_i), renormalized. Throws ValidationError on
// non-finite or negative utilities.
std::pair<MwuState, MixedStrategy> MwuStep(const MwuState& state,
                                           std::span<const double> utilities);

// ----------------------------------------------------------------- Exp3

struct Exp3State {
  std::vector<double> weights;  // pre-mix, normalized, all > 0
  double gamma = 0.0;           // in (0,1]
  int step = 0;
};

Exp3State MakeExp3State(std::size_t num_actions, double gamma);

// Played distribution (1 - gamma) w + gamma / k.
MixedStrategy Exp3Strategy(const Exp3State& state);

// Scales the played action's weight by exp(gamma u / (k p)), where p is the
// played action's probability under Exp3Strategy(state).
std::pair<Exp3State, MixedStrategy> Exp3Step(const Exp3State& state,
                                             std::size_t played_action,
                                             double observed_utility);

// ---------------------------------------------------------------- Fixed

MixedStrategy FixedActionStrategy(std::size_t num_actions, std::size_t action);

// ---------------------------------------------------------- CCE tracker

enum class TrackerMode { kTrack, kPendingSwitch, kExp3 };

std::string TrackerModeName(TrackerMode mode);

struct TrackerState {
  JointDistribution target = JointDistribution::Uniform(1, 1);
  Player player = Player::kOne;
  int horizon = 0;
  int epoch_length = 0;  // ceil(sqrt(T))
  int epoch = 1;         // 1-based index of the current epoch
  TrackerMode mode = TrackerMode::kTrack;
  // Round (1-based) after which the tracker entered kExp3, or 0.
  int switch_round = 0;
  double last_check_distance = 0.0;
  Exp3State exp3;
  int step = 0;
};

TrackerState MakeTrackerState(const JointDistribution& target, Player player,
                              int horizon, double gamma);

// |A| / (j T^{1/6}).
double TrackerThreshold(std::size_t joint_size, int epoch, int horizon);

// True when the update for round state.step + 1 closes an epoch.
bool TrackerAtEpochBoundary(const TrackerState& state);

// The strategy the tracker plays in the next round: its own marginal of the
// target while tracking, the Exp3 strategy afterwards.
MixedStrategy TrackerStrategy(const TrackerState& state);

// Advances one round. `empirical` must be present exactly when the round
// closes an epoch; otherwise InvariantError. The own action and utility feed
// the embedded Exp3 learner once it is active.
std::pair<TrackerState, MixedStrategy> CceTrackerStep(
    const TrackerState& state, const std::optional<JointDistribution>& empirical,
    std::size_t own_action, double utility);

// ------------------------------------------------------ Reactive utility

// Utility sequence of the incompatibility construction over binary actions
// {0, 1}. The window holds the last m own actions, oldest first, ending with
// the current action.
class ReactiveUtility {
 public:
  explicit ReactiveUtility(int memory);  // ValidationError when m < 3
  int memory() const { return memory_; }

  // 1 if the first m-1 entries are all 1 and the current action differs
  // from the previous one; 1/2 if all m entries are 1; 0 otherwise.
  double Evaluate(std::span<const int> window) const;

 private:
  int memory_;
};

// ------------------------------------------------------------- Learner

struct LearnerConfig {
  LearnerKind kind = LearnerKind::kMwu;
  std::uint64_t seed = 0;
  double eta_scale = 1.0;
  double gamma_scale = 1.0;
  std::size_t fixed_action = 0;
  // Tracker only.
  std::optional<JointDistribution> target;
  std::optional<std::uint64_t> public_seed;
};

// Parses "mwu", "exp3", "fixed:<i>" or "cce-track".
LearnerConfig ParseAlgo(const std::string& algo);
std::string AlgoString(const LearnerConfig& config);

// What a learner observes after a round. `utilities` holds u_i(x, opp) for
// every own action x (full information); bandit learners read only
// `realized`.
struct Observation {
  std::size_t own_action = 0;
  std::size_t opponent_action = 0;
  std::vector<double> utilities;
  double realized = 0.0;
};

// Value-semantic learner: copying snapshots the full state, including RNG
// streams.
class Learner {
 public:
  // Builds a learner for `player` in a game with the given action counts.
  static Learner Create(const LearnerConfig& config, Player player,
                        std::size_t n1, std::size_t n2, int horizon);

  LearnerKind kind() const { return kind_; }
  Player player() const { return player_; }
  int step() const;
  std::size_t num_actions() const { return num_actions_; }

  // Strategy for the upcoming round (before any perturbation).
  MixedStrategy Strategy() const;

  // Draws the action for the upcoming round from Strategy() mixed with the
  // uniform distribution using `mix_weight`. Trackers in a tracking mode
  // draw a joint action from the target with the public stream and return
  // their own coordinate.
  std::size_t SampleAction(double mix_weight = 0.0);

  bool NeedsOracle() const;

  // True for a tracker currently playing its target.
  bool FollowsTarget() const;
  // Tracker target (only meaningful when kind() == kCceTracker).
  const JointDistribution* Target() const;
  std::optional<std::uint64_t> PublicSeed() const { return public_seed_; }
  const TrackerState* tracker_state() const;

  void Update(const Observation& obs,
              const std::optional<JointDistribution>& empirical = std::nullopt);

 private:
  LearnerKind kind_ = LearnerKind::kMwu;
  Player player_ = Player::kOne;
  std::size_t num_actions_ = 0;
  std::variant<MwuState, Exp3State, std::size_t, TrackerState> state_;
  Rng rng_;
  Rng public_rng_;
  std::optional<std::uint64_t> public_seed_;
};

}  // namespace policy_dyn

#endif  // POLICY_DYN_LEARNERS_H_
