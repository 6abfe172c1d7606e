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


// Command-line front end:
//   policy-dyn simulate --config run.json
//   policy-dyn incompat --rounds 9000 --memory 3 --arm fixed|mwu --out pfx
//   policy-dyn check-eq --game g.json --pi pi.json | --sigma s.json
//   policy-dyn example

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "policy_dyn/error.h"
#include "policy_dyn/harness.h"
#include "policy_dyn/io.h"

namespace {

using policy_dyn::Json;

int Simulate(const std::string& config_path, const std::string& out_override) {
  policy_dyn::RunConfig config =
      policy_dyn::RunConfigFromJson(policy_dyn::ReadJsonFile(config_path));
  if (!out_override.empty()) config.out = out_override;
  switch (config.mode) {
    case policy_dyn::RunMode::kSelfplay: {
      policy_dyn::RunReport report = policy_dyn::RunSelfplay(config);
      if (config.out.empty()) {
        std::cout << policy_dyn::ReportCsv(report);
      } else {
        policy_dyn::EmitReport(report, config.out);
      }
      return 0;
    }
    case policy_dyn::RunMode::kIncompat: {
      for (const auto& report : policy_dyn::RunIncompat(config)) {
        if (config.out.empty()) {
          std::cout << "# arm " << report.arm << "\n" << policy_dyn::ReportCsv(report);
        } else {
          policy_dyn::EmitReport(report, config.out + "-" + report.arm);
        }
      }
      return 0;
    }
    case policy_dyn::RunMode::kExample: {
      policy_dyn::ExampleReport r = policy_dyn::RunExample();
      std::cout << policy_dyn::ExampleSummary(r);
      return r.all_passed ? 0 : 1;
    }
    case policy_dyn::RunMode::kCheckEq:
      throw policy_dyn::ConfigError(
          "check-eq runs through the check-eq subcommand, not a run config");
  }
  return 2;
}

int Incompat(int rounds, int memory, const std::string& arm,
             const std::string& out, std::uint64_t seed, double eta_scale) {
  policy_dyn::RunConfig config;
  config.mode = policy_dyn::RunMode::kIncompat;
  config.rounds = rounds;
  config.memory = memory;
  config.seed = seed;
  config.learner1.eta_scale = eta_scale;
  config.out = out;
  auto reports = policy_dyn::RunIncompat(config, arm);
  for (const auto& report : reports) {
    const auto& last = report.rows.back();
    char line[256];
    std::snprintf(line, sizeof(line),
                  "arm=%s T=%d m=%d external_regret=%.12g policy_regret=%.12g\n",
                  report.arm.c_str(), rounds, memory, last.ext1, last.pol1_max);
    std::cout << line;
    if (!out.empty()) {
      policy_dyn::EmitReport(report,
                             reports.size() == 1 ? out : out + "-" + report.arm);
    }
  }
  return 0;
}

int CheckEq(const std::string& game_path, const std::string& pi_path,
            const std::string& sigma_path, double tol) {
  policy_dyn::Game game =
      policy_dyn::GameFromJson(policy_dyn::ReadJsonFile(game_path));
  policy_dyn::EquilibriumVerdict verdict;
  if (!pi_path.empty()) {
    auto pi = policy_dyn::FunctionPairFromJson(policy_dyn::ReadJsonFile(pi_path));
    verdict = policy_dyn::IsPolicyEquilibrium(pi, game, tol);
  } else {
    auto sigma = policy_dyn::JointFromJson(policy_dyn::ReadJsonFile(sigma_path),
                                           game.n1(), game.n2());
    verdict = policy_dyn::IsCce(sigma, game, tol);
  }
  std::cout << policy_dyn::VerdictToJson(verdict, game).dump(2) << "\n";
  return verdict.is_equilibrium ? 0 : 1;
}

int Example(double tol, bool json) {
  policy_dyn::ExampleReport r = policy_dyn::RunExample(tol);
  if (json) {
    std::cout << policy_dyn::ExampleReportToJson(r).dump(2) << "\n";
  } else {
    std::cout << policy_dyn::ExampleSummary(r);
  }
  return r.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning dynamics, policy regret and policy equilibria in "
               "repeated bimatrix games"};
  app.require_subcommand(1);

  std::string config_path, sim_out;
  auto* simulate = app.add_subcommand("simulate", "Run a configured simulation");
  simulate->add_option("--config", config_path, "Run config JSON")->required();
  simulate->add_option("--out", sim_out, "Output prefix (overrides the config)");

  int rounds = 9000, memory = 3;
  std::string arm, inc_out;
  std::uint64_t seed = 0;
  double eta_scale = 1.0;
  auto* incompat = app.add_subcommand(
      "incompat", "Policy vs external regret against a reactive adversary");
  incompat->add_option("--rounds", rounds, "Horizon T")->check(CLI::PositiveNumber);
  incompat->add_option("--memory", memory, "Adversary memory m (>= 3)");
  incompat->add_option("--arm", arm, "fixed or mwu (default: both)")
      ->check(CLI::IsMember({"fixed", "mwu"}));
  incompat->add_option("--out", inc_out, "Output prefix");
  incompat->add_option("--seed", seed, "RNG seed");
  incompat->add_option("--eta-scale", eta_scale, "MWU step-size scale");

  std::string game_path, pi_path, sigma_path;
  double eq_tol = 1e-8;
  auto* check = app.add_subcommand("check-eq", "Certify an equilibrium");
  check->add_option("--game", game_path, "Game JSON")->required();
  auto* pi_opt = check->add_option("--pi", pi_path, "Function-pair distribution JSON");
  auto* sigma_opt = check->add_option("--sigma", sigma_path, "Joint distribution JSON");
  pi_opt->excludes(sigma_opt);
  check->add_option("--tol", eq_tol, "Tolerance");

  double ex_tol = 1e-8;
  bool ex_json = false;
  auto* example = app.add_subcommand("example", "Reproduce the worked example");
  example->add_option("--tol", ex_tol, "Tolerance of the CCE check");
  example->add_flag("--json", ex_json, "Print machine-readable verdicts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return Simulate(config_path, sim_out);
    if (*incompat) return Incompat(rounds, memory, arm, inc_out, seed, eta_scale);
    if (*check) {
      if (pi_path.empty() == sigma_path.empty()) {
        throw policy_dyn::ConfigError("check-eq needs exactly one of --pi or --sigma");
      }
      return CheckEq(game_path, pi_path, sigma_path, eq_tol);
    }
    if (*example) return Example(ex_tol, ex_json);
  } catch (const policy_dyn::Error& e) {
    std::cerr << "policy-dyn: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "policy-dyn: unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
