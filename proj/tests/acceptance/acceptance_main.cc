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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "policy_dyn/equilibria.h"
#include "policy_dyn/error.h"
#include "policy_dyn/game.h"
#include "policy_dyn/harness.h"
#include "policy_dyn/learners.h"
#include "policy_dyn/markov.h"
#include "policy_dyn/regret.h"
#include "policy_dyn/rng.h"

namespace policy_dyn {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Game RandomGame(Rng& rng, std::size_t n1, std::size_t n2) {
  Matrix u1(n1, n2), u2(n1, n2);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      u1(i, j) = rng.Uniform();
      u2(i, j) = rng.Uniform();
    }
  }
  std::vector<std::string> a1, a2;
  for (std::size_t i = 0; i < n1; ++i) a1.push_back("r" + std::to_string(i));
  for (std::size_t j = 0; j < n2; ++j) a2.push_back("c" + std::to_string(j));
  return Game(a1, a2, u1, u2);
}

MixedStrategy RandomStrategy(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (double& x : w) x = rng.Uniform() + 1e-3;
  return MixedStrategy::FromWeights(w);
}

// Random sequence of product strategies, the shape produced by play.
std::vector<JointDistribution> RandomSequence(Rng& rng, std::size_t n1,
                                              std::size_t n2, int T) {
  std::vector<JointDistribution> seq;
  seq.reserve(T);
  for (int t = 0; t < T; ++t) {
    seq.push_back(ProductDistribution(RandomStrategy(rng, n1), RandomStrategy(rng, n2)));
  }
  return seq;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome Criterion1() {
  const auto start = std::chrono::steady_clock::now();
  ExampleReport r = RunExample();
  const double secs = Seconds(start);
  const double tol = 1e-10;
  const bool ok = r.policy_verdict.is_equilibrium && r.policy_verdict.witness &&
                  L1Distance(r.policy_verdict.witness->probs(),
                             JointDistribution::Dirac(2, 2, 0, 0).probs()) <= tol &&
                  std::abs(r.witness_value - 0.75) <= tol &&
                  std::abs(r.deviation_value) <= tol && !r.cce_verdict.is_equilibrium &&
                  std::abs(r.cce_slack - 0.25) <= tol && r.all_passed && secs < 1.0;
  return {ok, Fmt("witness E[u1]=%.12g deviation=%.12g cce_slack=%.12g time=%.3fs",
                  r.witness_value, r.deviation_value, r.cce_slack, secs)};
}

Outcome Criterion2() {
  const auto start = std::chrono::steady_clock::now();
  RunConfig c;
  c.mode = RunMode::kIncompat;
  c.rounds = 9000;
  c.memory = 3;
  c.record_every = 9000;
  std::vector<RunReport> reports = RunIncompat(c);
  const double secs = Seconds(start);
  const CheckpointRow& fixed = reports.at(0).rows.back();
  const CheckpointRow& mwu = reports.at(1).rows.back();
  const bool ok = fixed.ext1 == 4500.0 && fixed.pol1_max <= 0.0 && mwu.ext1 <= 200.0 &&
                  mwu.pol1_max >= 3600.0 && secs < 10.0;
  return {ok, Fmt("fixed ext=%.12g pol=%.12g; mwu ext=%.12g pol=%.12g time=%.2fs",
                  fixed.ext1, fixed.pol1_max, mwu.ext1, mwu.pol1_max, secs)};
}

Outcome Criterion3() {
  Rng rng(3003);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n2 = k < 50 ? 2 : 3;
    std::vector<JointDistribution> seq = RandomSequence(rng, 2, n2, 500);
    EmpiricalChainAccumulator acc(2, n2);
    for (const auto& p : seq) acc.Add(p);
    worst = std::max(worst, StationaryResidual(acc.Chain(), acc.Mean()));
  }
  return {worst <= 1e-10, Fmt("max residual=%.3g over 100 sequences", worst)};
}

Outcome Criterion4() {
  Rng rng(4004);
  double worst_chain = 0.0;
  double worst_sum = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::vector<JointDistribution> seq = RandomSequence(rng, 2, 2, 50);
    TransitionMatrix m_hat = EmpiricalChain(seq);
    FunctionPairDistribution pi = EmpiricalFunctionDistribution(seq);
    TransitionMatrix induced = InducedChain(pi);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        worst_chain = std::max(worst_chain, std::abs(induced(i, j) - m_hat(i, j)));
      }
    }
    double s = 0.0;
    for (double v : pi.probs()) s += v;
    worst_sum = std::max(worst_sum, std::abs(s - 1.0));
  }
  return {worst_chain <= 1e-10 && worst_sum <= 1e-12,
          Fmt("max |induced - M_hat|=%.3g (tol 1e-10), max |sum pi - 1|=%.3g (tol 1e-12)",
              worst_chain, worst_sum)};
}

Outcome Criterion5() {
  Rng rng(5005);
  double worst_res = 0.0;
  double worst_id = 0.0;
  const auto pairs = EnumerateFunctionPairs(2, 2);
  for (int k = 0; k < 50; ++k) {
    Game g = RandomGame(rng, 2, 2);
    std::vector<double> w(16);
    for (double& x : w) x = rng.Uniform();
    auto pi = FunctionPairDistribution::FromWeights(2, 2, w);
    for (Player p : {Player::kOne, Player::kTwo}) {
      for (std::size_t a = 0; a < 2; ++a) {
        JointDistribution s = DeviationStationary(pi, p, a);
        worst_res = std::max(worst_res, StationaryResidual(DeviationChain(pi, p, a).chain, s));
        double brute = 0.0;
        for (const auto& fg : pairs) {
          brute += pi[fg.index] * (p == Player::kOne ? g.u1()(a, fg.g[a])
                                                     : g.u2()(fg.f[a], a));
        }
        worst_id = std::max(worst_id, std::abs(ExpectedUtility(s, g, p) - brute));
      }
    }
  }
  return {worst_res <= 1e-10 && worst_id <= 1e-12,
          Fmt("max residual=%.3g, max identity gap=%.3g", worst_res, worst_id)};
}

// Replays a player-2 MWU learner against a random player-1 sequence and
// checks every substitution of the last m opponent actions.
Outcome Criterion6() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(6006);
  double worst_ratio = 0.0;
  long checks = 0;
  for (int T : {100, 400, 1600}) {
    const double eta = 1.0 / std::sqrt(static_cast<double>(T));
    for (int m : {1, 2, 3}) {
      for (int trial = 0; trial < 3; ++trial) {
        Game g = RandomGame(rng, 2, 2);
        std::vector<std::size_t> opp(T);
        for (auto& a : opp) a = rng.Uniform() < 0.5 ? 0 : 1;
        std::vector<MwuState> states = {MakeMwuState(2, eta)};
        for (int t = 0; t < T; ++t) {
          states.push_back(MwuStep(states.back(), g.UtilityVector(Player::kTwo, opp[t])).first);
        }
        const double bound = m / std::sqrt(static_cast<double>(T));
        // Round t (0-based) uses states[t]; replace rounds max(0,t-m)..t-1.
        for (int t = 1; t < T; ++t) {
          const int from = std::max(0, t - m);
          const int len = t - from;
          const MixedStrategy real = MixedStrategy::FromWeights(states[t].weights);
          for (int mask = 0; mask < (1 << len); ++mask) {
            MwuState s = states[from];
            for (int k = 0; k < len; ++k) {
              s = MwuStep(s, g.UtilityVector(Player::kTwo, (mask >> k) & 1)).first;
            }
            const double gap =
                L1Distance(real.probs(), MixedStrategy::FromWeights(s.weights).probs());
            worst_ratio = std::max(worst_ratio, gap / bound);
            ++checks;
          }
        }
      }
    }
  }
  const double secs = Seconds(start);
  return {worst_ratio <= 1.0 && secs < 30.0,
          Fmt("max gap/(m/sqrt T)=%.4f over %ld checks time=%.2fs", worst_ratio, checks,
              secs)};
}

RunConfig MwuSelfplay(const Game& g, int T, std::uint64_t seed) {
  RunConfig c;
  c.inline_game = g;
  c.rounds = T;
  c.memory = 1;
  c.learner1 = ParseAlgo("mwu");
  c.learner2 = ParseAlgo("mwu");
  c.record_every = T;
  c.seed = seed;
  return c;
}

std::vector<Game> Criterion7Games() {
  Rng rng(7007);
  std::vector<Game> games;
  for (int s = 0; s < 50; ++s) games.push_back(RandomGame(rng, 2, 2));
  return games;
}

Outcome Criterion7() {
  const auto start = std::chrono::steady_clock::now();
  const int T = 10000;
  std::vector<Game> games = Criterion7Games();
  std::vector<RunConfig> configs;
  for (int s = 0; s < 50; ++s) configs.push_back(MwuSelfplay(games[s], T, 700 + s));
  std::vector<RunReport> reports = RunSweep(configs);
  double worst_margin = -1e300;
  const double r_t = 2.0 * std::sqrt(T * std::log(2.0));
  const double s_t = std::sqrt(static_cast<double>(T));
  for (int s = 0; s < 50; ++s) {
    const CheckpointRow& row = reports[s].rows.back();
    const double b1 = PolicyRegretBound(games[s], Player::kOne, s_t, r_t);
    const double b2 = PolicyRegretBound(games[s], Player::kTwo, s_t, r_t);
    for (double v : row.pol1) worst_margin = std::max(worst_margin, v - b1);
    for (double v : row.pol2) worst_margin = std::max(worst_margin, v - b2);
  }
  const double secs = Seconds(start);
  return {worst_margin <= 0.0 && secs < 120.0,
          Fmt("max (policy regret - bound)=%.4g time=%.2fs", worst_margin, secs)};
}

Outcome Criterion8() {
  Rng rng(8008);
  std::vector<std::string> parts;
  bool ok = true;
  for (int k = 0; k < 5; ++k) {
    Game g = RandomGame(rng, 2, 2);
    std::vector<RunConfig> configs;
    for (int T : {1000, 16000}) {
      for (int s = 0; s < 50; ++s) configs.push_back(MwuSelfplay(g, T, 800 + s));
    }
    std::vector<RunReport> reports = RunSweep(configs);
    std::vector<double> early, late;
    for (int s = 0; s < 50; ++s) {
      early.push_back(reports[s].rows.back().slack);
      late.push_back(reports[50 + s].rows.back().slack);
    }
    const double me = Median(early), ml = Median(late);
    ok = ok && ml <= std::max(me, 0.0) + 0.05;
    parts.push_back(Fmt("%.4g->%.4g", me, ml));
  }
  std::string detail = "median slack T=1e3->1.6e4:";
  for (const auto& p : parts) detail += " " + p;
  return {ok, detail};
}

Outcome Criterion9() {
  Rng rng(9009);
  const int T = 10000;
  bool ok = true;
  double worst_median = 0.0;
  int certified = 0, total = 0;
  for (int k = 0; k < 10; ++k) {
    Game g = RandomGame(rng, 2, 2);
    JointDistribution sigma = RandomCce(g, rng);
    std::vector<RunConfig> configs;
    for (int s = 0; s < 20; ++s) {
      RunConfig c;
      c.inline_game = g;
      c.rounds = T;
      c.learner1 = ParseAlgo("cce-track");
      c.learner2 = ParseAlgo("cce-track");
      c.learner1.target = sigma;
      c.learner2.target = sigma;
      c.record_every = T;
      c.seed = 900 + s;
      c.keep_history = true;
      configs.push_back(c);
    }
    std::vector<RunReport> reports = RunSweep(configs);
    std::vector<double> dist;
    for (auto& r : reports) {
      dist.push_back(L1Distance(r.rows.back().sigma_hat, sigma.probs()));
      const PlayHistory& h = *r.history;
      std::vector<JointDistribution> seq;
      for (std::size_t t = 0; t < h.T(); ++t) seq.push_back(h.JointStrategy(t));
      FunctionPairDistribution pi = EmpiricalFunctionDistribution(seq);
      ++total;
      if (IsPolicyEquilibrium(pi, g, kEmpiricalTolerance).is_equilibrium) ++certified;
    }
    const double med = Median(dist);
    worst_median = std::max(worst_median, med);
    ok = ok && med <= 0.1;
  }
  ok = ok && certified == total;
  return {ok, Fmt("worst median ||sigma_hat - sigma||_1=%.3g, certified %d/%d", worst_median,
                  certified, total)};
}

Outcome Criterion10() {
  std::vector<Game> games = Criterion7Games();
  RunConfig c = MwuSelfplay(games[0], 10000, 700);
  const std::string a = ReportCsv(RunSelfplay(c));
  const std::string b = ReportCsv(RunSelfplay(c));
  return {a == b, Fmt("csv bytes=%zu identical=%s", a.size(), a == b ? "yes" : "no")};
}

}  // namespace
}  // namespace policy_dyn

int main() {
  using policy_dyn::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"worked example certification", policy_dyn::Criterion1},
      {"incompatibility of regret notions", policy_dyn::Criterion2},
      {"empirical stationarity", policy_dyn::Criterion3},
      {"function distribution round trip", policy_dyn::Criterion4},
      {"deviation stationary construction", policy_dyn::Criterion5},
      {"MWU stability", policy_dyn::Criterion6},
      {"policy regret bound", policy_dyn::Criterion7},
      {"slack trend", policy_dyn::Criterion8},
      {"CCE tracking recipe", policy_dyn::Criterion9},
      {"determinism", policy_dyn::Criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu (%s): %s  %s\n", i + 1, criteria[i].first,
                o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
