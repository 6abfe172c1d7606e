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

#include <cmath>

#include "gtest/gtest.h"
#include "policy_dyn/error.h"
#include "policy_dyn/harness.h"

namespace policy_dyn {
namespace {

Game MatchingPennies() {
  return Game({"h", "t"}, {"h", "t"}, Matrix::FromRows({{1, 0}, {0, 1}}),
              Matrix::FromRows({{0, 1}, {1, 0}}));
}

// Player 1 always plays `action` against a single-action opponent.
PlayHistory ConstantReactiveHistory(int T, std::size_t action) {
  PlayHistory h;
  h.n1 = 2;
  h.n2 = 1;
  for (int t = 0; t < T; ++t) {
    h.actions1.push_back(action);
    h.actions2.push_back(0);
    h.strategies1.push_back(MixedStrategy::Dirac(2, action));
    h.strategies2.push_back(MixedStrategy::Dirac(1, 0));
    h.utility_trace1.push_back(0.0);
    h.utility_trace2.push_back(0.0);
  }
  return h;
}

TEST(ReactiveRegretTest, ConstantOneHasExternalRegretHalfT) {
  for (int T : {10, 101, 1000}) {
    PlayHistory h = ConstantReactiveHistory(T, 1);
    for (int m : {3, 4, 6}) {
      ReactiveUtility rule(m);
      EXPECT_DOUBLE_EQ(ExternalRegretReactive(h, rule), T / 2.0);
      EXPECT_DOUBLE_EQ(PolicyRegretReactive(h, rule, 1, m), 0.0);
      EXPECT_DOUBLE_EQ(PolicyRegretReactive(h, rule, 0, m), -T / 2.0);
    }
  }
}

TEST(ReactiveRegretTest, ConstantZeroEarnsNothing) {
  PlayHistory h = ConstantReactiveHistory(50, 0);
  ReactiveUtility rule(3);
  // Switching to 1 at a single position never completes the 1-run.
  EXPECT_DOUBLE_EQ(ExternalRegretReactive(h, rule), 0.0);
  // Always playing 1 earns 1/2 per round; the realized 0 earns 1 once, in
  // round 1, where the padded pre-history is all ones.
  EXPECT_DOUBLE_EQ(PolicyRegretReactive(h, rule, 1, 3), 24.0);
}

TEST(ReactiveRegretTest, RejectsBadArguments) {
  PlayHistory h = ConstantReactiveHistory(5, 1);
  ReactiveUtility rule(3);
  EXPECT_THROW(PolicyRegretReactive(h, rule, 2, 3), ValidationError);
  EXPECT_THROW(PolicyRegretReactive(h, rule, 0, 0), ValidationError);
}

RunConfig SelfplayConfig(const Game& g, const std::string& a1,
                         const std::string& a2, int T, int m) {
  RunConfig c;
  c.inline_game = g;
  c.rounds = T;
  c.memory = m;
  c.learner1 = ParseAlgo(a1);
  c.learner2 = ParseAlgo(a2);
  c.seed = 31;
  c.record_every = T;
  c.keep_history = true;
  return c;
}

OpponentReplayer ReplayerFor(const RunConfig& c, Player opponent) {
  OpponentReplayer r;
  r.config = opponent == Player::kTwo ? c.learner2 : c.learner1;
  r.config.seed = DeriveSeed(c.seed, opponent == Player::kTwo ? 2 : 1);
  r.horizon = c.rounds;
  return r;
}

TEST(PolicyRegretTest, OfflineReplayMatchesStreamedValues) {
  const Game g = MatchingPennies();
  for (int m : {1, 2, 5}) {
    RunConfig c = SelfplayConfig(g, "mwu", "exp3", 300, m);
    RunReport r = RunSelfplay(c);
    ASSERT_TRUE(r.history);
    const CheckpointRow& last = r.rows.back();
    ASSERT_EQ(last.round, 300);
    OpponentReplayer rep2 = ReplayerFor(c, Player::kTwo);
    OpponentReplayer rep1 = ReplayerFor(c, Player::kOne);
    for (std::size_t a = 0; a < 2; ++a) {
      EXPECT_NEAR(PolicyRegret(*r.history, g, Player::kOne, a, m, &rep2),
                  last.pol1[a], 1e-9);
      EXPECT_NEAR(PolicyRegret(*r.history, g, Player::kTwo, a, m, &rep1),
                  last.pol2[a], 1e-9);
    }
    EXPECT_NEAR(ExternalRegret(*r.history, g, Player::kOne), last.ext1, 1e-9);
    EXPECT_NEAR(ExternalRegret(*r.history, g, Player::kTwo), last.ext2, 1e-9);
  }
}

TEST(PolicyRegretTest, ObliviousOpponentMakesPolicyEqualExternal) {
  const Game g = MatchingPennies();
  RunConfig c = SelfplayConfig(g, "mwu", "fixed:1", 200, 3);
  RunReport r = RunSelfplay(c);
  OpponentReplayer rep = ReplayerFor(c, Player::kTwo);
  double best = -1e300;
  for (std::size_t a = 0; a < 2; ++a) {
    best = std::max(best, PolicyRegret(*r.history, g, Player::kOne, a, 3, &rep));
  }
  EXPECT_NEAR(best, ExternalRegret(*r.history, g, Player::kOne), 1e-12);
  // Against a fixed tails player, heads earns nothing.
  EXPECT_NEAR(ExternalRegret(*r.history, g, Player::kOne),
              200.0 - [&] {
                double s = 0.0;
                for (const auto& p : r.history->strategies1) s += p[1];
                return s;
              }(),
              1e-9);
}

TEST(PolicyRegretTest, NullReplayerIsConfigError) {
  const Game g = MatchingPennies();
  RunReport r = RunSelfplay(SelfplayConfig(g, "mwu", "mwu", 20, 1));
  EXPECT_THROW(PolicyRegret(*r.history, g, Player::kOne, 0, 1, nullptr),
               ConfigError);
}

TEST(DeviationTraceTest, Identities) {
  const Game g = MatchingPennies();
  const int m = 2;
  RunConfig c = SelfplayConfig(g, "exp3", "mwu", 150, m);
  RunReport r = RunSelfplay(c);
  OpponentReplayer rep = ReplayerFor(c, Player::kTwo);
  for (std::size_t a = 0; a < 2; ++a) {
    DeviationTrace tr = ComputeDeviationTrace(*r.history, g, Player::kOne, a, m, rep);
    ASSERT_EQ(tr.strategies.size(), 150u);
    // Round 1 has nothing to replace.
    EXPECT_EQ(tr.strategies[0], r.history->strategies2[0]);
    JointDistribution emp = DeviationEmpirical(tr);
    EXPECT_NEAR(emp.Marginal(Player::kOne)[a], 1.0, 1e-12);
    // sum_t E_{joint_t} u1 minus realized equals the policy regret.
    double cf = 0.0, realized = 0.0;
    for (std::size_t t = 0; t < 150; ++t) {
      cf += ExpectedUtility(tr.joint[t], g, Player::kOne);
      realized += ExpectedUtility(r.history->JointStrategy(t), g, Player::kOne);
    }
    EXPECT_NEAR(cf - realized, PolicyRegret(*r.history, g, Player::kOne, a, m, &rep),
                1e-9);
    EXPECT_NEAR(150.0 * ExpectedUtility(emp, g, Player::kOne), cf, 1e-9);
  }
}

TEST(DeviationTraceTest, TamperedHistoryIsDetected) {
  const Game g = MatchingPennies();
  RunConfig c = SelfplayConfig(g, "mwu", "exp3", 100, 1);
  RunReport r = RunSelfplay(c);
  PlayHistory h = *r.history;
  for (std::size_t t = 40; t < 60; ++t) {
    h.actions2[t] = 1 - h.actions2[t];
    h.utility_trace1[t] = g.u1()(h.actions1[t], h.actions2[t]);
    h.utility_trace2[t] = g.u2()(h.actions1[t], h.actions2[t]);
  }
  OpponentReplayer rep = ReplayerFor(c, Player::kTwo);
  EXPECT_THROW(ComputeDeviationTrace(h, g, Player::kOne, 0, 1, rep), InvariantError);
}

TEST(DeviationTraceTest, MemoryBeyondHorizonReplacesWholePrefix) {
  const Game g = MatchingPennies();
  RunConfig c = SelfplayConfig(g, "mwu", "mwu", 30, 1);
  RunReport r = RunSelfplay(c);
  OpponentReplayer rep = ReplayerFor(c, Player::kTwo);
  // With m >= T every round's counterfactual is play against constant a.
  DeviationTrace big = ComputeDeviationTrace(*r.history, g, Player::kOne, 0, 30, rep);
  DeviationTrace bigger = ComputeDeviationTrace(*r.history, g, Player::kOne, 0, 100, rep);
  for (std::size_t t = 0; t < 30; ++t) EXPECT_EQ(big.strategies[t], bigger.strategies[t]);
  // MWU player 2 facing constant heads moves toward tails monotonically.
  for (std::size_t t = 1; t < 30; ++t) {
    EXPECT_GT(big.strategies[t][1], big.strategies[t - 1][1]);
  }
}

TEST(BoundTest, Closed) {
  const Game g = Game::WorkedExample();
  // ||u1||_2 for [[.75,0],[1,0]] is 1.25.
  EXPECT_NEAR(PolicyRegretBound(g, Player::kOne, 10.0, 5.0), 17.5, 1e-9);
}

TEST(HistoryTest, ValidateCatchesMismatch) {
  const Game g = MatchingPennies();
  RunReport r = RunSelfplay(SelfplayConfig(g, "mwu", "mwu", 10, 1));
  EXPECT_NO_THROW(r.history->Validate(&g));
  PlayHistory h = *r.history;
  h.utility_trace1[3] = 1.0 - h.utility_trace1[3];
  EXPECT_THROW(h.Validate(&g), ValidationError);
  h = *r.history;
  h.actions2.pop_back();
  EXPECT_THROW(h.Validate(), DimensionError);
}

}  // namespace
}  // namespace policy_dyn
