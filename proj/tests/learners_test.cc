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

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "policy_dyn/error.h"
#include "policy_dyn/rng.h"

namespace policy_dyn {
namespace {

TEST(MwuTest, ZeroUtilityLeavesStrategyUnchanged) {
  MwuState s = MakeMwuState(3, 0.2);
  s = MwuStep(s, std::vector<double>{0.9, 0.1, 0.4}).first;
  auto [next, p] = MwuStep(s, std::vector<double>{0.0, 0.0, 0.0});
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p[i], s.weights[i], 1e-15);
  EXPECT_EQ(next.step, s.step + 1);
}

TEST(MwuTest, OneStepClosedForm) {
  auto [s, p] = MwuStep(MakeMwuState(2, 0.1), std::vector<double>{1.0, 0.0});
  EXPECT_NEAR(p[0], 0.524979187479, 1e-12);
  EXPECT_NEAR(p[1], 0.475020812521, 1e-12);
}

TEST(MwuTest, RejectsBadUtilities) {
  MwuState s = MakeMwuState(2, 0.1);
  EXPECT_THROW(MwuStep(s, std::vector<double>{-0.1, 0.0}), ValidationError);
  EXPECT_THROW(MwuStep(s, std::vector<double>{NAN, 0.0}), ValidationError);
  EXPECT_THROW(MwuStep(s, std::vector<double>{0.0}), DimensionError);
}

TEST(MwuTest, PerStepMovementBound) {
  Rng rng(17);
  for (int T : {100, 400, 1600}) {
    MwuState s = MakeMwuState(2, 1.0 / std::sqrt(T));
    MixedStrategy prev = MixedStrategy::FromWeights(s.weights);
    for (int t = 0; t < T; ++t) {
      auto [next, p] = MwuStep(s, std::vector<double>{rng.Uniform(), rng.Uniform()});
      EXPECT_LE(L1Distance(prev.probs(), p.probs()), 1.0 / (2.0 * std::sqrt(T)) + 1e-15);
      s = next;
      prev = p;
    }
  }
}

TEST(MwuTest, ExternalRegretWithinStandardBound) {
  Rng rng(29);
  const int T = 5000;
  for (std::size_t k : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 5; ++trial) {
      MwuState s = MakeMwuState(k, 1.0 / std::sqrt(T));
      std::vector<double> cumulative(k, 0.0);
      double earned = 0.0;
      // Drifting utilities with a change point make a nontrivial best action.
      for (int t = 0; t < T; ++t) {
        std::vector<double> u(k);
        for (std::size_t i = 0; i < k; ++i) {
          double bias = (t < T / 2) == (i == 0) ? 0.3 : 0.0;
          u[i] = std::min(1.0, rng.Uniform() * 0.7 + bias);
        }
        MixedStrategy p = MixedStrategy::FromWeights(s.weights);
        for (std::size_t i = 0; i < k; ++i) {
          earned += p[i] * u[i];
          cumulative[i] += u[i];
        }
        s = MwuStep(s, u).first;
      }
      const double regret =
          *std::max_element(cumulative.begin(), cumulative.end()) - earned;
      EXPECT_LE(regret, 2.0 * std::sqrt(T * std::log(static_cast<double>(k))));
    }
  }
}

TEST(Exp3Test, ZeroUtilityLeavesWeightsUnchanged) {
  Exp3State s = MakeExp3State(3, 0.1);
  auto [next, p] = Exp3Step(s, 1, 0.0);
  EXPECT_EQ(next.weights, s.weights);
  EXPECT_EQ(next.step, 1);
}

TEST(Exp3Test, OneStepClosedForm) {
  auto [s, p] = Exp3Step(MakeExp3State(2, 0.1), 0, 1.0);
  EXPECT_NEAR(s.weights[0], 0.524979187479, 1e-12);
  EXPECT_NEAR(s.weights[1], 0.475020812521, 1e-12);
  // Played distribution mixes in gamma / k.
  EXPECT_NEAR(p[0], 0.9 * 0.524979187479 + 0.05, 1e-12);
}

TEST(Exp3Test, ExplorationFloor) {
  Exp3State s = MakeExp3State(4, 0.2);
  for (int t = 0; t < 200; ++t) s = Exp3Step(s, 0, 1.0).first;
  MixedStrategy p = Exp3Strategy(s);
  for (int i = 0; i < 4; ++i) EXPECT_GE(p[i], 0.2 / 4 - 1e-15);
  EXPECT_THROW(MakeExp3State(2, 1.5), ConfigError);
  EXPECT_THROW(Exp3Step(s, 0, 1.5), ValidationError);
}

TEST(Exp3Test, AverageDriftWithinThreeGamma) {
  const int T = 400;
  const double gamma = 1.0 / std::sqrt(T);
  const int seeds = 200;
  std::vector<double> per_seed;
  Rng env(101);
  std::vector<std::vector<double>> utilities(T, std::vector<double>(2));
  for (auto& u : utilities) u = {env.Uniform(), env.Uniform()};
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(seed);
    Exp3State s = MakeExp3State(2, gamma);
    double drift = 0.0;
    for (int t = 0; t < T; ++t) {
      MixedStrategy p = Exp3Strategy(s);
      std::size_t a = rng.Sample(p.probs());
      auto [next, q] = Exp3Step(s, a, utilities[t][a]);
      drift += L1Distance(p.probs(), q.probs());
      s = next;
    }
    per_seed.push_back(drift / T);
  }
  const double mean = std::accumulate(per_seed.begin(), per_seed.end(), 0.0) / seeds;
  double var = 0.0;
  for (double v : per_seed) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / (seeds - 1) / seeds);
  EXPECT_LE(mean, 3 * gamma + 3 * se);
}

TEST(FixedTest, DiracAtAction) {
  EXPECT_EQ(FixedActionStrategy(2, 0).probs(), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(FixedActionStrategy(2, 1).probs(), (std::vector<double>{0.0, 1.0}));
  EXPECT_THROW(FixedActionStrategy(2, 2), ValidationError);
}

TEST(FixedTest, HistoryIndependent) {
  LearnerConfig c = ParseAlgo("fixed:1");
  Learner a = Learner::Create(c, Player::kOne, 2, 2, 100);
  Learner b = a;
  a.Update({1, 0, {0.1, 0.9}, 0.9});
  b.Update({1, 1, {0.7, 0.2}, 0.2});
  EXPECT_EQ(a.Strategy(), b.Strategy());
  EXPECT_EQ(a.Strategy(), FixedActionStrategy(2, 1));
}

TEST(TrackerTest, Threshold) {
  EXPECT_NEAR(TrackerThreshold(4, 2, 10000), 0.430886938006, 1e-11);
}

JointDistribution Correlated() {
  return JointDistribution::FromProbs(2, 2, {0.4, 0.1, 0.2, 0.3});
}

TEST(TrackerTest, NeverSwitchesWhenEmpiricalMatchesTarget) {
  const int T = 400;
  TrackerState s = MakeTrackerState(Correlated(), Player::kOne, T, 0.05);
  EXPECT_EQ(s.epoch_length, 20);
  EXPECT_EQ(TrackerStrategy(s), Correlated().Marginal(Player::kOne));
  for (int t = 0; t < T; ++t) {
    std::optional<JointDistribution> oracle;
    if (TrackerAtEpochBoundary(s)) oracle = Correlated();
    auto [next, p] = CceTrackerStep(s, oracle, 0, 0.5);
    EXPECT_EQ(p, Correlated().Marginal(Player::kOne));
    s = next;
  }
  EXPECT_EQ(s.mode, TrackerMode::kTrack);
  EXPECT_EQ(s.switch_round, 0);
}

TEST(TrackerTest, OracleOnlyAtEpochBoundaries) {
  TrackerState s = MakeTrackerState(Correlated(), Player::kTwo, 100, 0.1);
  EXPECT_THROW(CceTrackerStep(s, Correlated(), 0, 0.5), InvariantError);
  for (int t = 0; t < 9; ++t) s = CceTrackerStep(s, std::nullopt, 0, 0.5).first;
  EXPECT_TRUE(TrackerAtEpochBoundary(s));
  EXPECT_THROW(CceTrackerStep(s, std::nullopt, 0, 0.5), InvariantError);
}

TEST(TrackerTest, PendingForOneEpochThenExp3) {
  const int T = 400;  // epochs of 20 rounds, first threshold ~1.474
  TrackerState s = MakeTrackerState(Correlated(), Player::kOne, T, 0.05);
  const auto far = JointDistribution::Dirac(2, 2, 0, 1);
  for (int t = 1; t <= T; ++t) {
    std::optional<JointDistribution> oracle;
    if (TrackerAtEpochBoundary(s)) oracle = far;
    s = CceTrackerStep(s, oracle, 0, 0.5).first;
    if (t == 20) EXPECT_EQ(s.mode, TrackerMode::kPendingSwitch);
    if (t == 30) EXPECT_EQ(TrackerStrategy(s), Correlated().Marginal(Player::kOne));
    if (t == 40) EXPECT_EQ(s.mode, TrackerMode::kExp3);
  }
  EXPECT_EQ(s.switch_round, 40);
  EXPECT_EQ(s.mode, TrackerMode::kExp3);
}

TEST(TrackerTest, DeterministicSwitchRounds) {
  auto run = [] {
    LearnerConfig c = ParseAlgo("cce-track");
    c.target = Correlated();
    c.public_seed = 99;
    c.seed = 5;
    Learner l = Learner::Create(c, Player::kOne, 2, 2, 400);
    Rng env(3);
    std::vector<double> sum(4, 0.0);
    for (int t = 1; t <= 400; ++t) {
      std::size_t a = l.SampleAction();
      std::size_t b = env.Sample(std::vector<double>{0.5, 0.5});
      sum[a * 2 + b] += 1.0;
      std::optional<JointDistribution> oracle;
      if (l.NeedsOracle()) oracle = JointDistribution::FromWeights(2, 2, sum);
      l.Update({a, b, {0.3, 0.6}, a == 0 ? 0.3 : 0.6}, oracle);
    }
    return l.tracker_state()->switch_round;
  };
  EXPECT_EQ(run(), run());
}

TEST(TrackerTest, SharedPublicSeedRealizesCorrelatedDraws) {
  LearnerConfig c = ParseAlgo("cce-track");
  c.target = Correlated();
  c.public_seed = 1234;
  Learner p1 = Learner::Create(c, Player::kOne, 2, 2, 10000);
  c.seed = 77;  // private seeds may differ
  Learner p2 = Learner::Create(c, Player::kTwo, 2, 2, 10000);
  std::vector<double> counts(4, 0.0);
  const int n = 20000;
  for (int t = 0; t < n; ++t) {
    std::size_t a = p1.SampleAction();
    std::size_t b = p2.SampleAction();
    counts[a * 2 + b] += 1.0;
  }
  for (int k = 0; k < 4; ++k) {
    const double p = Correlated()[k];
    EXPECT_NEAR(counts[k] / n, p, 4 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(ReactiveUtilityTest, Cases) {
  ReactiveUtility r(3);
  EXPECT_EQ(r.Evaluate(std::vector<int>{1, 1, 1}), 0.5);
  EXPECT_EQ(r.Evaluate(std::vector<int>{1, 1, 0}), 1.0);
  EXPECT_EQ(r.Evaluate(std::vector<int>{0, 1, 1}), 0.0);
  EXPECT_THROW(r.Evaluate(std::vector<int>{1, 1}), DimensionError);
  EXPECT_THROW(ReactiveUtility(2), ValidationError);
}

TEST(ReactiveUtilityTest, RangeIsExactlyThreeValues) {
  for (int m = 3; m <= 6; ++m) {
    ReactiveUtility r(m);
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<int> w(m);
      for (int i = 0; i < m; ++i) w[i] = (mask >> i) & 1;
      double v = r.Evaluate(w);
      EXPECT_TRUE(v == 0.0 || v == 0.5 || v == 1.0);
    }
  }
}

TEST(SampleTest, DiracAlwaysSame) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(rng.Sample(MixedStrategy::Dirac(3, 2).probs()), 2u);
  }
}

TEST(SampleTest, UniformFrequency) {
  Rng rng(2024);
  const int n = 1000000;
  int zeros = 0;
  const std::vector<double> uniform = {0.5, 0.5};
  for (int i = 0; i < n; ++i) zeros += rng.Sample(uniform) == 0;
  EXPECT_NEAR(static_cast<double>(zeros) / n, 0.5, 0.002);
}

TEST(SampleTest, FixedSeedReproducible) {
  const std::vector<double> p = {0.3, 0.7};
  Rng a(42), b(42);
  std::vector<std::size_t> first, second;
  for (int i = 0; i < 5; ++i) {
    first.push_back(a.Sample(p));
    second.push_back(b.Sample(p));
  }
  EXPECT_EQ(first, second);
  // Frozen regression values; a change here breaks reproducibility of runs.
  EXPECT_EQ(first, (std::vector<std::size_t>{1, 1, 1, 0, 1}));
}

TEST(LearnerTest, CopiesAdvanceIdentically) {
  LearnerConfig c = ParseAlgo("exp3");
  c.seed = 8;
  Learner a = Learner::Create(c, Player::kTwo, 2, 3, 900);
  for (int t = 0; t < 10; ++t) {
    std::size_t x = a.SampleAction();
    a.Update({x, 0, {0.1, 0.5, 0.9}, 0.1 + 0.4 * x});
  }
  Learner b = a;
  for (int t = 0; t < 50; ++t) {
    std::size_t x = a.SampleAction();
    std::size_t y = b.SampleAction();
    ASSERT_EQ(x, y);
    a.Update({x, 1, {0.1, 0.5, 0.9}, 0.1 + 0.4 * x});
    b.Update({y, 1, {0.1, 0.5, 0.9}, 0.1 + 0.4 * y});
  }
  EXPECT_EQ(a.Strategy(), b.Strategy());
}

TEST(LearnerTest, ParseAlgo) {
  EXPECT_EQ(ParseAlgo("mwu").kind, LearnerKind::kMwu);
  EXPECT_EQ(ParseAlgo("fixed:3").fixed_action, 3u);
  EXPECT_EQ(AlgoString(ParseAlgo("fixed:3")), "fixed:3");
  EXPECT_THROW(ParseAlgo("fixed:"), ConfigError);
  EXPECT_THROW(ParseAlgo("hedge"), ConfigError);
}

}  // namespace
}  // namespace policy_dyn
