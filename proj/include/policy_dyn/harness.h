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


#ifndef POLICY_DYN_HARNESS_H_
#define POLICY_DYN_HARNESS_H_

// Experiment orchestration: self-play, the incompatibility experiment, the
// worked example and report emission.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "policy_dyn/equilibria.h"
#include "policy_dyn/game.h"
#include "policy_dyn/io.h"
#include "policy_dyn/learners.h"
#include "policy_dyn/regret.h"

namespace policy_dyn {

enum class RunMode { kSelfplay, kIncompat, kCheckEq, kExample };

std::string RunModeName(RunMode mode);
RunMode ParseRunMode(const std::string& name);

struct RunConfig {
  RunMode mode = RunMode::kSelfplay;
  // Path of a game file. Ignored when `inline_game` is set.
  std::string game;
  std::optional<Game> inline_game;
  int rounds = 1000;
  int memory = 1;
  LearnerConfig learner1;
  LearnerConfig learner2;
  // Learner seeds given explicitly; otherwise derived from `seed`.
  bool learner1_seeded = false;
  bool learner2_seeded = false;
  bool lagged_empirical = false;
  bool perturb = false;
  int record_every = 1;
  std::string out;
  std::uint64_t seed = 0;
  // In-process only: keep the full play history in the report.
  bool keep_history = false;
};

// Throws ConfigError on inconsistent settings.
void ValidateConfig(const RunConfig& config);

// The config file format: every RunConfig field above except the in-process
// ones. "game" may be a path or an inline game object.
RunConfig RunConfigFromJson(const Json& j);
Json RunConfigToJson(const RunConfig& config);

// Geometric schedule record_every * 2^k below T, then T.
std::vector<int> CheckpointSchedule(int rounds, int record_every);

struct CheckpointRow {
  int round = 0;
  double ext1 = 0.0;
  double ext2 = 0.0;
  double pol1_max = 0.0;
  double pol2_max = 0.0;
  double slack = 0.0;
  double l1_sigma_tilde_hat = 0.0;
  double stat_res_hat = 0.0;
  double stat_res_tilde = 0.0;
  // Policy regret per deviation action.
  std::vector<double> pol1;
  std::vector<double> pol2;
  std::vector<double> sigma_hat;
  std::vector<double> sigma_tilde;
};

struct TrackerSummary {
  int player = 1;
  std::string final_mode;
  int switch_round = 0;
};

struct RunReport {
  RunConfig config;
  std::string arm;  // incompat arm name, empty otherwise
  std::vector<CheckpointRow> rows;
  std::vector<TrackerSummary> trackers;
  std::optional<PlayHistory> history;
};

// Loads the configured game (inline game first, then the path).
Game ResolveGame(const RunConfig& config);

RunReport RunSelfplay(const RunConfig& config);

// Incompatibility experiment against the reactive utility of memory
// config.memory (>= 3). `arm` is "fixed" (constant action 1) or "mwu"
// (full-information MWU); both arms when empty.
std::vector<RunReport> RunIncompat(const RunConfig& config,
                                   const std::string& arm = "");

struct ExampleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExampleReport {
  EquilibriumVerdict policy_verdict;
  EquilibriumVerdict cce_verdict;
  double witness_value = 0.0;    // E_witness[u1]
  double deviation_value = 0.0;  // E_{sigma_b}[u1]
  double cce_slack = 0.0;        // slack of player 1 deviating to b
  std::vector<ExampleCheck> checks;
  bool all_passed = false;
};

// Certifies the embedded worked example. `cce_tol` is the tolerance of the
// CCE check.
ExampleReport RunExample(double cce_tol = kExactTolerance);
Json ExampleReportToJson(const ExampleReport& report);
std::string ExampleSummary(const ExampleReport& report);

// CSV text with the fixed 9-column header, 12 significant digits.
std::string ReportCsv(const RunReport& report);
Json ReportJson(const RunReport& report);
// Writes <prefix>.csv and <prefix>.json.
void EmitReport(const RunReport& report, const std::string& out_prefix);

// Runs independent self-play configs in parallel, at most
// POLICY_DYN_THREADS (default: hardware concurrency) at a time. Results are
// in input order.
std::vector<RunReport> RunSweep(const std::vector<RunConfig>& configs);

// Worker count honoring POLICY_DYN_THREADS.
unsigned SweepThreads();

}  // namespace policy_dyn

#endif  // POLICY_DYN_HARNESS_H_
