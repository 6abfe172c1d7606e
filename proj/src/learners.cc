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


#include "policy_dyn/learners.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "policy_dyn/error.h"

namespace policy_dyn {
namespace {

void NormalizeInPlace(std::vector<double>& w) {
  double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= sum;
}

void CheckUtility(double u) {
  if (!std::isfinite(u) || u < 0.0 || u > 1.0) {
    throw ValidationError("utility " + std::to_string(u) + " outside [0,1]");
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kMwu: return "mwu";
    case LearnerKind::kExp3: return "exp3";
    case LearnerKind::kFixed: return "fixed";
    case LearnerKind::kCceTracker: return "cce-track";
  }
  return "unknown";
}

// ------------------------------------------------------------------ MWU

MwuState MakeMwuState(std::size_t num_actions, double eta) {
  if (num_actions == 0) throw ValidationError("MWU needs at least one action");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ValidationError("MWU step size must be positive");
  }
  MwuState s;
  s.weights.assign(num_actions, 1.0 / static_cast<double>(num_actions));
  s.eta = eta;
  return s;
}

std::pair<MwuState, MixedStrategy> MwuStep(const MwuState& state,
                                           std::span<const double> utilities) {
  if (utilities.size() != state.weights.size()) {
    throw DimensionError("MWU utility vector", state.weights.size(),
                         utilities.size());
  }
  for (double u : utilities) {
    if (!std::isfinite(u) || u < 0.0) {
      throw ValidationError("MWU utility must be finite and nonnegative");
    }
  }
  MwuState next = state;
  // Shift exponents by the max so the largest factor is exactly 1; this keeps
  // every weight representable before the per-round renormalization.
  double umax = *std::max_element(utilities.begin(), utilities.end());
  for (std::size_t i = 0; i < next.weights.size(); ++i) {
    next.weights[i] *= std::exp(state.eta * (utilities[i] - umax));
  }
  NormalizeInPlace(next.weights);
  for (double& w : next.weights) w = std::max(w, 1e-300);
  ++next.step;
  return {next, MixedStrategy::FromWeights(next.weights)};
}

// ----------------------------------------------------------------- Exp3

Exp3State MakeExp3State(std::size_t num_actions, double gamma) {
  if (num_actions == 0) throw ValidationError("Exp3 needs at least one action");
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ConfigError("Exp3 gamma " + std::to_string(gamma) +
                      " outside (0,1]");
  }
  Exp3State s;
  s.weights.assign(num_actions, 1.0 / static_cast<double>(num_actions));
  s.gamma = gamma;
  return s;
}

MixedStrategy Exp3Strategy(const Exp3State& state) {
  return MixWithUniform(MixedStrategy::FromWeights(state.weights),
                        state.gamma);
}

std::pair<Exp3State, MixedStrategy> Exp3Step(const Exp3State& state,
                                             std::size_t played_action,
                                             double observed_utility) {
  const std::size_t k = state.weights.size();
  if (played_action >= k) throw ValidationError("Exp3 action out of range");
  CheckUtility(observed_utility);
  MixedStrategy played = Exp3Strategy(state);
  double p = played[played_action];
  if (!(p > 0.0)) {
    throw InvariantError("Exp3 played an action with zero probability");
  }
  Exp3State next = state;
  next.weights[played_action] *=
      std::exp(state.gamma * observed_utility / (static_cast<double>(k) * p));
  NormalizeInPlace(next.weights);
  for (double& w : next.weights) w = std::max(w, 1e-300);
  ++next.step;
  return {next, Exp3Strategy(next)};
}

// ---------------------------------------------------------------- Fixed

MixedStrategy FixedActionStrategy(std::size_t num_actions, std::size_t action) {
  return MixedStrategy::Dirac(num_actions, action);
}

// ---------------------------------------------------------- CCE tracker

std::string TrackerModeName(TrackerMode mode) {
  switch (mode) {
    case TrackerMode::kTrack: return "track";
    case TrackerMode::kPendingSwitch: return "pending-switch";
    case TrackerMode::kExp3: return "exp3";
  }
  return "unknown";
}

TrackerState MakeTrackerState(const JointDistribution& target, Player player,
                              int horizon, double gamma) {
  if (horizon < 1) throw ConfigError("tracker horizon must be positive");
  TrackerState s;
  s.target = target;
  s.player = player;
  s.horizon = horizon;
  s.epoch_length =
      static_cast<int>(std::ceil(std::sqrt(static_cast<double>(horizon))));
  std::size_t n = player == Player::kOne ? target.n1() : target.n2();
  s.exp3 = MakeExp3State(n, gamma);
  return s;
}

double TrackerThreshold(std::size_t joint_size, int epoch, int horizon) {
  return static_cast<double>(joint_size) /
         (static_cast<double>(epoch) *
          std::pow(static_cast<double>(horizon), 1.0 / 6.0));
}

bool TrackerAtEpochBoundary(const TrackerState& state) {
  return (state.step + 1) % state.epoch_length == 0;
}

MixedStrategy TrackerStrategy(const TrackerState& state) {
  if (state.mode == TrackerMode::kExp3) return Exp3Strategy(state.exp3);
  return state.target.Marginal(state.player);
}

std::pair<TrackerState, MixedStrategy> CceTrackerStep(
    const TrackerState& state, const std::optional<JointDistribution>& empirical,
    std::size_t own_action, double utility) {
  const bool boundary = TrackerAtEpochBoundary(state);
  if (boundary && !empirical) {
    throw InvariantError("tracker needs the empirical distribution at the end "
                         "of each epoch");
  }
  if (!boundary && empirical) {
    throw InvariantError("empirical distribution supplied mid-epoch");
  }
  TrackerState next = state;
  if (state.mode == TrackerMode::kExp3) {
    next.exp3 = Exp3Step(state.exp3, own_action, utility).first;
  }
  ++next.step;
  if (boundary) {
    if (empirical->size() != state.target.size()) {
      throw DimensionError("tracker empirical distribution",
                           state.target.size(), empirical->size());
    }
    switch (state.mode) {
      case TrackerMode::kTrack: {
        double d = L1Distance(empirical->probs(), state.target.probs());
        next.last_check_distance = d;
        if (d > TrackerThreshold(state.target.size(), state.epoch,
                                 state.horizon)) {
          next.mode = TrackerMode::kPendingSwitch;
        }
        break;
      }
      case TrackerMode::kPendingSwitch:
        next.mode = TrackerMode::kExp3;
        next.switch_round = next.step;
        break;
      case TrackerMode::kExp3:
        break;
    }
    ++next.epoch;
  }
  return {next, TrackerStrategy(next)};
}

// ------------------------------------------------------ Reactive utility

ReactiveUtility::ReactiveUtility(int memory) : memory_(memory) {
  if (memory < 3) {
    throw ValidationError("reactive utility needs memory >= 3, got " +
                          std::to_string(memory));
  }
}

double ReactiveUtility::Evaluate(std::span<const int> window) const {
  if (static_cast<int>(window.size()) != memory_) {
    throw DimensionError("reactive utility window",
                         static_cast<std::size_t>(memory_), window.size());
  }
  for (int a : window) {
    if (a != 0 && a != 1) throw ValidationError("reactive actions are binary");
  }
  for (int i = 0; i + 1 < memory_; ++i) {
    if (window[i] != 1) return 0.0;
  }
  return window[memory_ - 1] == 1 ? 0.5 : 1.0;
}

// ------------------------------------------------------------- Learner

LearnerConfig ParseAlgo(const std::string& algo) {
  LearnerConfig c;
  if (algo == "mwu") {
    c.kind = LearnerKind::kMwu;
  } else if (algo == "exp3") {
    c.kind = LearnerKind::kExp3;
  } else if (algo == "cce-track") {
    c.kind = LearnerKind::kCceTracker;
  } else if (algo.rfind("fixed:", 0) == 0) {
    c.kind = LearnerKind::kFixed;
    const std::string idx = algo.substr(6);
    if (idx.empty() ||
        !std::all_of(idx.begin(), idx.end(), [](char ch) {
          return ch >= '0' && ch <= '9';
        })) {
      throw ConfigError("bad fixed action in algo '" + algo + "'");
    }
    c.fixed_action = std::stoul(idx);
  } else {
    throw ConfigError("unknown algo '" + algo + "'");
  }
  return c;
}

std::string AlgoString(const LearnerConfig& config) {
  if (config.kind == LearnerKind::kFixed) {
    return "fixed:" + std::to_string(config.fixed_action);
  }
  return LearnerKindName(config.kind);
}

Learner Learner::Create(const LearnerConfig& config, Player player,
                        std::size_t n1, std::size_t n2, int horizon) {
  if (horizon < 1) throw ConfigError("horizon must be positive");
  Learner l;
  l.kind_ = config.kind;
  l.player_ = player;
  l.num_actions_ = player == Player::kOne ? n1 : n2;
  l.rng_ = Rng(config.seed);
  const double root_t = std::sqrt(static_cast<double>(horizon));
  switch (config.kind) {
    case LearnerKind::kMwu:
      l.state_ = MakeMwuState(l.num_actions_, config.eta_scale / root_t);
      break;
    case LearnerKind::kExp3:
      l.state_ = MakeExp3State(l.num_actions_, config.gamma_scale / root_t);
      break;
    case LearnerKind::kFixed:
      if (config.fixed_action >= l.num_actions_) {
        throw ConfigError("fixed action " +
                          std::to_string(config.fixed_action) +
                          " out of range");
      }
      l.state_ = config.fixed_action;
      break;
    case LearnerKind::kCceTracker:
      if (!config.target) throw ConfigError("cce-track needs a target");
      if (!config.public_seed) throw ConfigError("cce-track needs a public seed");
      if (config.target->n1() != n1 || config.target->n2() != n2) {
        throw DimensionError("tracker target", n1 * n2, config.target->size());
      }
      l.state_ = MakeTrackerState(*config.target, player, horizon,
                                  config.gamma_scale / root_t);
      l.public_seed_ = config.public_seed;
      l.public_rng_ = Rng(*config.public_seed);
      break;
  }
  return l;
}

int Learner::step() const {
  return std::visit(Overloaded{[](const MwuState& s) { return s.step; },
                               [](const Exp3State& s) { return s.step; },
                               [](std::size_t) { return -1; },
                               [](const TrackerState& s) { return s.step; }},
                    state_);
}

MixedStrategy Learner::Strategy() const {
  return std::visit(
      Overloaded{
          [](const MwuState& s) { return MixedStrategy::FromWeights(s.weights); },
          [](const Exp3State& s) { return Exp3Strategy(s); },
          [this](std::size_t a) { return FixedActionStrategy(num_actions_, a); },
          [](const TrackerState& s) { return TrackerStrategy(s); }},
      state_);
}

std::size_t Learner::SampleAction(double mix_weight) {
  if (const auto* t = std::get_if<TrackerState>(&state_)) {
    if (t->mode != TrackerMode::kExp3) {
      std::size_t joint = public_rng_.Sample(t->target.probs());
      std::size_t n2 = t->target.n2();
      return player_ == Player::kOne ? joint / n2 : joint % n2;
    }
  }
  MixedStrategy p = Strategy();
  if (mix_weight > 0.0) p = MixWithUniform(p, mix_weight);
  return rng_.Sample(p.probs());
}

bool Learner::NeedsOracle() const {
  const auto* t = std::get_if<TrackerState>(&state_);
  return t != nullptr && TrackerAtEpochBoundary(*t);
}

bool Learner::FollowsTarget() const {
  const auto* t = std::get_if<TrackerState>(&state_);
  return t != nullptr && t->mode != TrackerMode::kExp3;
}

const JointDistribution* Learner::Target() const {
  const auto* t = std::get_if<TrackerState>(&state_);
  return t ? &t->target : nullptr;
}

const TrackerState* Learner::tracker_state() const {
  return std::get_if<TrackerState>(&state_);
}

void Learner::Update(const Observation& obs,
                     const std::optional<JointDistribution>& empirical) {
  if (obs.own_action >= num_actions_) {
    throw ValidationError("observed own action out of range");
  }
  std::visit(
      Overloaded{
          [&](MwuState& s) {
            if (empirical) throw InvariantError("MWU takes no oracle input");
            s = MwuStep(s, obs.utilities).first;
          },
          [&](Exp3State& s) {
            if (empirical) throw InvariantError("Exp3 takes no oracle input");
            s = Exp3Step(s, obs.own_action, obs.realized).first;
          },
          [&](std::size_t) {
            if (empirical) throw InvariantError("fixed play takes no oracle input");
          },
          [&](TrackerState& s) {
            s = CceTrackerStep(s, empirical, obs.own_action, obs.realized).first;
          }},
      state_);
}

}  // namespace policy_dyn
