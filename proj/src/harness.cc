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


#include "policy_dyn/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "policy_dyn/error.h"
#include "policy_dyn/markov.h"

namespace policy_dyn {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double MaxOf(const std::vector<double>& v) {
  return v.empty() ? kNaN : *std::max_element(v.begin(), v.end());
}

LearnerConfig LearnerFromJson(const Json& j, bool& seeded) {
  if (!j.is_object()) throw ConfigError("learner config must be an object");
  static const std::set<std::string> kKnown = {"algo", "seed", "eta_scale",
                                               "gamma_scale", "target"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) throw ConfigError("unknown learner field '" + key + "'");
  }
  if (!j.contains("algo")) throw ConfigError("learner config needs 'algo'");
  LearnerConfig c = ParseAlgo(j.at("algo").get<std::string>());
  seeded = j.contains("seed");
  if (seeded) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("eta_scale")) c.eta_scale = j.at("eta_scale").get<double>();
  if (j.contains("gamma_scale")) c.gamma_scale = j.at("gamma_scale").get<double>();
  if (j.contains("target")) {
    // Shape is checked once the game is known.
    std::vector<double> probs = j.at("target").get<std::vector<double>>();
    c.target = JointDistribution::FromProbs(1, probs.size(), probs);
  }
  return c;
}

Json LearnerToJson(const LearnerConfig& c, bool seeded) {
  Json j{{"algo", AlgoString(c)},
         {"eta_scale", c.eta_scale},
         {"gamma_scale", c.gamma_scale}};
  if (seeded) j["seed"] = c.seed;
  if (c.target) j["target"] = c.target->probs();
  return j;
}

// Re-shapes a tracker target read before the game was known.
LearnerConfig ShapeLearner(LearnerConfig c, const Game& game) {
  if (c.target && (c.target->n1() != game.n1() || c.target->n2() != game.n2())) {
    if (c.target->size() != game.num_joint()) {
      throw DimensionError("tracker target", game.num_joint(), c.target->size());
    }
    c.target = JointDistribution::FromProbs(game.n1(), game.n2(), c.target->probs());
  }
  return c;
}

std::vector<double> ScaledCopy(const std::vector<double>& v, double s) {
  std::vector<double> out(v);
  for (double& x : out) x *= s;
  return out;
}

}  // namespace

std::string RunModeName(RunMode mode) {
  switch (mode) {
    case RunMode::kSelfplay: return "selfplay";
    case RunMode::kIncompat: return "incompat";
    case RunMode::kCheckEq: return "check-eq";
    case RunMode::kExample: return "example";
  }
  return "unknown";
}

RunMode ParseRunMode(const std::string& name) {
  if (name == "selfplay") return RunMode::kSelfplay;
  if (name == "incompat") return RunMode::kIncompat;
  if (name == "check-eq") return RunMode::kCheckEq;
  if (name == "example") return RunMode::kExample;
  throw ConfigError("unknown mode '" + name + "'");
}

void ValidateConfig(const RunConfig& c) {
  if (c.memory < 1) throw ConfigError("memory must be at least 1");
  if (c.rounds < std::max(4, c.memory + 1)) {
    throw ConfigError("rounds must be at least max(4, memory + 1)");
  }
  if (c.record_every < 1) throw ConfigError("record_every must be at least 1");
  if (c.mode == RunMode::kIncompat && c.memory < 3) {
    throw ConfigError("incompat mode needs memory >= 3, got " +
                      std::to_string(c.memory));
  }
  for (const LearnerConfig* l : {&c.learner1, &c.learner2}) {
    if (l->kind == LearnerKind::kCceTracker) {
      if (!l->target) throw ConfigError("cce-track learner needs a target");
      if (c.perturb) {
        throw ConfigError("perturbation cannot be combined with cce-track "
                          "learners (it would break correlated play)");
      }
    }
    if (!(l->eta_scale > 0.0) || !(l->gamma_scale > 0.0)) {
      throw ConfigError("eta_scale and gamma_scale must be positive");
    }
  }
}

RunConfig RunConfigFromJson(const Json& j) {
  if (!j.is_object()) throw ConfigError("run config must be an object");
  static const std::set<std::string> kKnown = {
      "mode",   "game",   "rounds",       "memory", "learner1", "learner2",
      "lagged_empirical", "perturb",      "record_every", "out",  "seed"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) throw ConfigError("unknown config field '" + key + "'");
  }
  RunConfig c;
  try {
    if (j.contains("mode")) c.mode = ParseRunMode(j.at("mode").get<std::string>());
    if (j.contains("game")) {
      const Json& g = j.at("game");
      if (g.is_string()) {
        c.game = g.get<std::string>();
      } else {
        c.inline_game = GameFromJson(g);
      }
    }
    if (j.contains("rounds")) c.rounds = j.at("rounds").get<int>();
    if (j.contains("memory")) c.memory = j.at("memory").get<int>();
    if (j.contains("learner1")) c.learner1 = LearnerFromJson(j.at("learner1"), c.learner1_seeded);
    if (j.contains("learner2")) c.learner2 = LearnerFromJson(j.at("learner2"), c.learner2_seeded);
    if (j.contains("lagged_empirical")) c.lagged_empirical = j.at("lagged_empirical").get<bool>();
    if (j.contains("perturb")) c.perturb = j.at("perturb").get<bool>();
    if (j.contains("record_every")) c.record_every = j.at("record_every").get<int>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

Json RunConfigToJson(const RunConfig& c) {
  Json j{{"mode", RunModeName(c.mode)},
         {"rounds", c.rounds},
         {"memory", c.memory},
         {"learner1", LearnerToJson(c.learner1, c.learner1_seeded)},
         {"learner2", LearnerToJson(c.learner2, c.learner2_seeded)},
         {"lagged_empirical", c.lagged_empirical},
         {"perturb", c.perturb},
         {"record_every", c.record_every},
         {"out", c.out},
         {"seed", c.seed}};
  j["game"] = c.inline_game ? GameToJson(*c.inline_game) : Json(c.game);
  return j;
}

std::vector<int> CheckpointSchedule(int rounds, int record_every) {
  std::vector<int> out;
  for (long t = record_every; t < rounds; t *= 2) out.push_back(static_cast<int>(t));
  out.push_back(rounds);
  return out;
}

Game ResolveGame(const RunConfig& config) {
  if (config.inline_game) return *config.inline_game;
  if (config.game.empty()) throw ConfigError("no game configured");
  return GameFromJson(ReadJsonFile(config.game));
}

// ----------------------------------------------------------- Self-play

RunReport RunSelfplay(const RunConfig& config_in) {
  ValidateConfig(config_in);
  RunConfig config = config_in;
  const Game game = ResolveGame(config);
  config.learner1 = ShapeLearner(config.learner1, game);
  config.learner2 = ShapeLearner(config.learner2, game);
  const std::size_t n1 = game.n1();
  const std::size_t n2 = game.n2();
  const std::size_t dim = game.num_joint();
  const int horizon = config.rounds;

  LearnerConfig lc[2] = {config.learner1, config.learner2};
  const bool seeded[2] = {config.learner1_seeded, config.learner2_seeded};
  for (int p = 0; p < 2; ++p) {
    if (!seeded[p]) lc[p].seed = DeriveSeed(config.seed, p + 1);
    if (lc[p].kind == LearnerKind::kCceTracker) lc[p].public_seed = config.seed;
  }
  std::vector<Learner> learners = {
      Learner::Create(lc[0], Player::kOne, n1, n2, horizon),
      Learner::Create(lc[1], Player::kTwo, n1, n2, horizon)};

  const double mix = config.perturb
                         ? PerturbationWeight(std::pow(static_cast<double>(horizon), -0.25) /
                                                  static_cast<double>(dim),
                                              dim)
                         : 0.0;

  std::vector<DeviationTracker> trackers = {
      DeviationTracker(game, Player::kOne, config.memory, mix),
      DeviationTracker(game, Player::kTwo, config.memory, mix)};

  EmpiricalChainAccumulator hat(n1, n2, EmpiricalChainOptions{config.lagged_empirical,
                                                              DeadStateRule::kSelfLoop});
  ObservedChainAccumulator tilde(n1, n2);
  std::vector<double> joint_sum(dim, 0.0);
  // Per player: comparator sums per own action, realized sum, counterfactual
  // sums and counterfactual joint sums per deviation action.
  std::vector<std::vector<double>> comparator = {std::vector<double>(n1, 0.0),
                                                 std::vector<double>(n2, 0.0)};
  double realized[2] = {0.0, 0.0};
  std::vector<std::vector<double>> cf = comparator;
  std::vector<std::vector<std::vector<double>>> dev_sum = {
      std::vector<std::vector<double>>(n1, std::vector<double>(dim, 0.0)),
      std::vector<std::vector<double>>(n2, std::vector<double>(dim, 0.0))};

  RunReport report;
  report.config = config_in;
  if (config.keep_history) {
    report.history = PlayHistory{};
    report.history->n1 = n1;
    report.history->n2 = n2;
    report.history->joints = std::vector<JointDistribution>{};
  }
  bool any_correlated = false;

  const std::vector<int> schedule = CheckpointSchedule(horizon, config.record_every);
  std::size_t next_checkpoint = 0;

  for (int t = 1; t <= horizon; ++t) {
    for (int d = 0; d < 2; ++d) trackers[d].BeginRound(learners[1 - d], joint_sum);

    MixedStrategy s1 = learners[0].Strategy();
    MixedStrategy s2 = learners[1].Strategy();
    if (mix > 0.0) {
      s1 = MixWithUniform(s1, mix);
      s2 = MixWithUniform(s2, mix);
    }
    // Two trackers sharing the public stream and target play the target's
    // correlated recommendation.
    const bool correlated =
        learners[0].FollowsTarget() && learners[1].FollowsTarget() &&
        learners[0].PublicSeed() == learners[1].PublicSeed() &&
        *learners[0].Target() == *learners[1].Target();
    JointDistribution p_t = correlated ? *learners[0].Target()
                                       : ProductDistribution(s1, s2);
    any_correlated = any_correlated || correlated;

    const std::size_t a1 = learners[0].SampleAction(mix);
    const std::size_t a2 = learners[1].SampleAction(mix);

    for (int d = 0; d < 2; ++d) {
      const Player dev = d == 0 ? Player::kOne : Player::kTwo;
      const std::size_t n_dev = game.num_actions(dev);
      for (std::size_t a = 0; a < n_dev; ++a) {
        MixedStrategy q = trackers[d].Counterfactual(a);
        JointDistribution pa =
            d == 0 ? ProductDistribution(MixedStrategy::Dirac(n1, a), q)
                   : ProductDistribution(q, MixedStrategy::Dirac(n2, a));
        cf[d][a] += ExpectedUtility(pa, game, dev);
        for (std::size_t k = 0; k < dim; ++k) dev_sum[d][a][k] += pa[k];
      }
      realized[d] += ExpectedUtility(p_t, game, dev);
      std::vector<double> values =
          game.ExpectedUtilityVector(dev, p_t.Marginal(Opponent(dev)));
      for (std::size_t a = 0; a < n_dev; ++a) comparator[d][a] += values[a];
    }

    hat.Add(p_t);
    tilde.Add(JointIndex(a1, a2, n2));
    for (std::size_t k = 0; k < dim; ++k) joint_sum[k] += p_t[k];

    const double r1 = game.u1()(a1, a2);
    const double r2 = game.u2()(a1, a2);
    Observation o1{a1, a2, game.UtilityVector(Player::kOne, a2), r1};
    Observation o2{a2, a1, game.UtilityVector(Player::kTwo, a1), r2};
    for (int p = 0; p < 2; ++p) {
      std::optional<JointDistribution> oracle;
      if (learners[p].NeedsOracle()) {
        oracle = JointDistribution::FromWeights(n1, n2, joint_sum);
      }
      learners[p].Update(p == 0 ? o1 : o2, oracle);
    }

    if (report.history) {
      PlayHistory& h = *report.history;
      h.actions1.push_back(a1);
      h.actions2.push_back(a2);
      h.strategies1.push_back(s1);
      h.strategies2.push_back(s2);
      h.utility_trace1.push_back(r1);
      h.utility_trace2.push_back(r2);
      h.joints->push_back(p_t);
    }

    if (next_checkpoint < schedule.size() && t == schedule[next_checkpoint]) {
      ++next_checkpoint;
      CheckpointRow row;
      row.round = t;
      const double inv_t = 1.0 / static_cast<double>(t);
      double ext[2];
      std::vector<double> pol[2];
      DeviationDistributions devs;
      for (int d = 0; d < 2; ++d) {
        ext[d] = MaxOf(comparator[d]) - realized[d];
        for (std::size_t a = 0; a < cf[d].size(); ++a) {
          pol[d].push_back(cf[d][a] - realized[d]);
          JointDistribution sa = JointDistribution::FromWeights(
              n1, n2, ScaledCopy(dev_sum[d][a], inv_t));
          (d == 0 ? devs.player1 : devs.player2).push_back(sa);
        }
      }
      JointDistribution sigma_hat = hat.Mean();
      JointDistribution sigma_tilde = tilde.Mean();
      row.ext1 = ext[0];
      row.ext2 = ext[1];
      row.pol1 = pol[0];
      row.pol2 = pol[1];
      row.pol1_max = MaxOf(pol[0]);
      row.pol2_max = MaxOf(pol[1]);
      row.slack = EquilibriumSlack(sigma_hat, devs, game);
      row.l1_sigma_tilde_hat = L1Distance(sigma_tilde.probs(), sigma_hat.probs());
      row.stat_res_hat = StationaryResidual(hat.Chain(), sigma_hat);
      row.stat_res_tilde = StationaryResidual(tilde.Chain(), sigma_tilde);
      row.sigma_hat = sigma_hat.probs();
      row.sigma_tilde = sigma_tilde.probs();
      report.rows.push_back(std::move(row));
    }
  }
  if (report.history && !any_correlated) report.history->joints.reset();

  for (int p = 0; p < 2; ++p) {
    if (const TrackerState* ts = learners[p].tracker_state()) {
      report.trackers.push_back({p + 1, TrackerModeName(ts->mode), ts->switch_round});
    }
  }
  return report;
}

// ------------------------------------------------------ Incompatibility

std::vector<RunReport> RunIncompat(const RunConfig& config_in,
                                   const std::string& arm) {
  RunConfig config = config_in;
  config.mode = RunMode::kIncompat;
  ValidateConfig(config);
  const ReactiveUtility rule(config.memory);
  std::vector<std::string> arms;
  if (arm.empty()) {
    arms = {"fixed", "mwu"};
  } else if (arm == "fixed" || arm == "mwu") {
    arms = {arm};
  } else {
    throw ConfigError("unknown incompat arm '" + arm + "'");
  }
  const int horizon = config.rounds;
  const int m = config.memory;
  const std::vector<int> schedule = CheckpointSchedule(horizon, config.record_every);

  std::vector<RunReport> reports;
  for (const std::string& name : arms) {
    RunReport report;
    report.config = config;
    report.arm = name;
    const bool mwu = name == "mwu";
    const std::uint64_t seed = config.learner1_seeded ? config.learner1.seed
                                                      : DeriveSeed(config.seed, 1);
    Rng rng(seed);
    MwuState state = MakeMwuState(
        2, (mwu ? config.learner1.eta_scale : 1.0) /
               std::sqrt(static_cast<double>(horizon)));
    PlayHistory h;
    h.n1 = 2;
    h.n2 = 1;
    // Comparator values of the constant deviations never depend on play.
    double deviation_value[2];
    for (int a = 0; a < 2; ++a) {
      std::vector<int> w(m, a);
      deviation_value[a] = rule.Evaluate(w);
    }
    double comparator[2] = {0.0, 0.0};
    double cf[2] = {0.0, 0.0};
    double realized = 0.0;
    std::size_t next_checkpoint = 0;
    for (int t = 0; t < horizon; ++t) {
      std::vector<int> window(m, 1);
      for (int k = 0; k + 1 < m; ++k) {
        int idx = t - (m - 1) + k;
        if (idx >= 0) window[k] = static_cast<int>(h.actions1[idx]);
      }
      double u[2];
      for (int a = 0; a < 2; ++a) {
        window[m - 1] = a;
        u[a] = rule.Evaluate(window);
      }
      MixedStrategy p = mwu ? MixedStrategy::FromWeights(state.weights)
                            : FixedActionStrategy(2, 1);
      const std::size_t action = mwu ? rng.Sample(p.probs()) : 1;
      for (int a = 0; a < 2; ++a) {
        comparator[a] += u[a];
        realized += p[a] * u[a];
        cf[a] += deviation_value[a];
      }
      if (mwu) state = MwuStep(state, std::vector<double>{u[0], u[1]}).first;
      h.actions1.push_back(action);
      h.actions2.push_back(0);
      h.strategies1.push_back(p);
      h.strategies2.push_back(MixedStrategy::Dirac(1, 0));
      h.utility_trace1.push_back(u[action]);
      h.utility_trace2.push_back(0.0);

      if (next_checkpoint < schedule.size() && t + 1 == schedule[next_checkpoint]) {
        ++next_checkpoint;
        CheckpointRow row;
        row.round = t + 1;
        row.ext1 = std::max(comparator[0], comparator[1]) - realized;
        row.pol1 = {cf[0] - realized, cf[1] - realized};
        row.pol1_max = MaxOf(row.pol1);
        row.ext2 = row.pol2_max = row.slack = row.l1_sigma_tilde_hat =
            row.stat_res_hat = row.stat_res_tilde = kNaN;
        report.rows.push_back(std::move(row));
      }
    }
    if (config.keep_history) report.history = std::move(h);
    reports.push_back(std::move(report));
  }
  return reports;
}

// ------------------------------------------------------ Worked example

ExampleReport RunExample(double cce_tol) {
  const Game game = Game::WorkedExample();
  const std::size_t a = 0, b = 1, c = 0;
  // f maps every column action to a; g maps a to c and b to d.
  const std::size_t f_index = EncodeF(std::vector<std::size_t>{a, a}, 2);
  const std::size_t g_index = EncodeG(std::vector<std::size_t>{0, 1}, 2);
  const FunctionPairDistribution pi =
      FunctionPairDistribution::Dirac(2, 2, f_index, g_index);
  const JointDistribution dirac_ac = JointDistribution::Dirac(2, 2, a, c);

  ExampleReport r;
  r.policy_verdict = IsPolicyEquilibrium(pi, game, kExactTolerance);
  r.cce_verdict = IsCce(dirac_ac, game, cce_tol);
  r.deviation_value =
      ExpectedUtility(DeviationStationary(pi, Player::kOne, b), game, Player::kOne);
  if (r.policy_verdict.witness) {
    r.witness_value = ExpectedUtility(*r.policy_verdict.witness, game, Player::kOne);
  }
  for (const auto& s : r.cce_verdict.slacks) {
    if (s.player == Player::kOne && s.deviation == b) r.cce_slack = s.slack;
  }

  const double tol = 1e-10;
  auto add = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  add("pi is a policy equilibrium", r.policy_verdict.is_equilibrium, "");
  add("witness is Dirac((a,c))",
      r.policy_verdict.witness &&
          L1Distance(r.policy_verdict.witness->probs(), dirac_ac.probs()) <= tol,
      "");
  add("witness value E[u1] = 0.75", std::abs(r.witness_value - 0.75) <= tol,
      FormatNumber(r.witness_value));
  add("deviation to b value = 0", std::abs(r.deviation_value) <= tol,
      FormatNumber(r.deviation_value));
  add("Dirac((a,c)) is not a CCE", !r.cce_verdict.is_equilibrium, "");
  add("CCE slack of deviation to b = 0.25", std::abs(r.cce_slack - 0.25) <= tol,
      FormatNumber(r.cce_slack));
  r.all_passed = std::all_of(r.checks.begin(), r.checks.end(),
                             [](const ExampleCheck& ch) { return ch.passed; });
  return r;
}

Json ExampleReportToJson(const ExampleReport& r) {
  const Game game = Game::WorkedExample();
  Json checks = Json::array();
  for (const auto& ch : r.checks) {
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}});
  }
  return Json{{"policy_equilibrium", VerdictToJson(r.policy_verdict, game)},
              {"cce", VerdictToJson(r.cce_verdict, game)},
              {"witness_value", r.witness_value},
              {"deviation_value", r.deviation_value},
              {"cce_slack", r.cce_slack},
              {"checks", checks},
              {"passed", r.all_passed}};
}

std::string ExampleSummary(const ExampleReport& r) {
  std::ostringstream os;
  os << "Worked example: u1 = [[0.75, 0], [1, 0]], u2 = 1\n"
     << "  pi = Dirac((f, g)), f = const a, g: a->c, b->d\n"
     << "  policy equilibrium: " << (r.policy_verdict.is_equilibrium ? "yes" : "no")
     << ", E_witness[u1] = " << FormatNumber(r.witness_value)
     << ", deviation to b = " << FormatNumber(r.deviation_value) << "\n"
     << "  Dirac((a,c)) is a CCE: " << (r.cce_verdict.is_equilibrium ? "yes" : "no")
     << ", slack of deviation to b = " << FormatNumber(r.cce_slack) << "\n";
  for (const auto& ch : r.checks) {
    os << (ch.passed ? "  [ok]   " : "  [FAIL] ") << ch.name;
    if (!ch.detail.empty()) os << " (" << ch.detail << ")";
    os << "\n";
  }
  return os.str();
}

// ------------------------------------------------------------ Reports

std::string ReportCsv(const RunReport& report) {
  std::string out =
      "round,ext1,ext2,pol1_max,pol2_max,slack,l1_sigma_tilde_hat,"
      "stat_res_hat,stat_res_tilde\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.round);
    for (double v : {r.ext1, r.ext2, r.pol1_max, r.pol2_max, r.slack,
                     r.l1_sigma_tilde_hat, r.stat_res_hat, r.stat_res_tilde}) {
      out += ',';
      out += FormatNumber(v);
    }
    out += '\n';
  }
  return out;
}

Json ReportJson(const RunReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"round", r.round},
                    {"ext1", r.ext1},
                    {"ext2", r.ext2},
                    {"pol1_max", r.pol1_max},
                    {"pol2_max", r.pol2_max},
                    {"slack", r.slack},
                    {"l1_sigma_tilde_hat", r.l1_sigma_tilde_hat},
                    {"stat_res_hat", r.stat_res_hat},
                    {"stat_res_tilde", r.stat_res_tilde},
                    {"pol1", r.pol1},
                    {"pol2", r.pol2},
                    {"sigma_hat", r.sigma_hat},
                    {"sigma_tilde", r.sigma_tilde}});
  }
  Json trackers = Json::array();
  for (const auto& t : report.trackers) {
    trackers.push_back({{"player", t.player},
                        {"final_mode", t.final_mode},
                        {"switch_round", t.switch_round}});
  }
  Json j{{"config", RunConfigToJson(report.config)},
         {"seed", report.config.seed},
         {"checkpoints", rows},
         {"trackers", trackers}};
  if (!report.arm.empty()) j["arm"] = report.arm;
  return j;
}

void EmitReport(const RunReport& report, const std::string& out_prefix) {
  if (out_prefix.empty()) throw ConfigError("empty output prefix");
  WriteTextFile(out_prefix + ".csv", ReportCsv(report));
  WriteTextFile(out_prefix + ".json", ReportJson(report).dump(2) + "\n");
}

// -------------------------------------------------------------- Sweeps

unsigned SweepThreads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("POLICY_DYN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

std::vector<RunReport> RunSweep(const std::vector<RunConfig>& configs) {
  std::vector<std::optional<RunReport>> results(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        results[i] = RunSelfplay(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(SweepThreads(),
                                        static_cast<unsigned>(configs.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<RunReport> out;
  out.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

}  // namespace policy_dyn
