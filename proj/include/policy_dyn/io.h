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


#ifndef POLICY_DYN_IO_H_
#define POLICY_DYN_IO_H_

// JSON encodings of games, distributions, chains and verdicts.

#include <string>

#include "json.hpp"
#include "policy_dyn/equilibria.h"
#include "policy_dyn/game.h"
#include "policy_dyn/markov.h"

namespace policy_dyn {

using Json = nlohmann::json;

// {"actions1": [...], "actions2": [...], "u1": [[...]], "u2": [[...]]}
Game GameFromJson(const Json& j);
Json GameToJson(const Game& game);

// Either a bare probability array or {"probs": [...]} (optionally with
// "n1"/"n2", which must match).
JointDistribution JointFromJson(const Json& j, std::size_t n1, std::size_t n2);
Json JointToJson(const JointDistribution& sigma);

// {"n1": .., "n2": .., "probs": [...]}
FunctionPairDistribution FunctionPairFromJson(const Json& j);
Json FunctionPairToJson(const FunctionPairDistribution& pi);

// {"dim": .., "rows": [[...]]}; the joint shape comes from the caller.
TransitionMatrix TransitionFromJson(const Json& j, std::size_t n1,
                                    std::size_t n2);
Json TransitionToJson(const TransitionMatrix& m);

// {"equilibrium": .., "witness": [...] | null, "violations": [...],
//  "slacks": [...]}; deviations are reported by action label.
Json VerdictToJson(const EquilibriumVerdict& verdict, const Game& game);

// File helpers; IoError names the path on failure.
Json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace policy_dyn

#endif  // POLICY_DYN_IO_H_
