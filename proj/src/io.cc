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


#include "policy_dyn/io.h"

#include <fstream>
#include <sstream>

#include "policy_dyn/error.h"

namespace policy_dyn {
namespace {

const Json& Field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ValidationError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

std::vector<double> DoubleArray(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw ValidationError(std::string(what) + " must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Matrix MatrixFromJson(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be a row list");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j) rows.push_back(DoubleArray(r, what));
  return Matrix::FromRows(rows);
}

Json SlackToJson(const DeviationSlack& s, const Game& game) {
  return Json{{"player", PlayerIndex(s.player) + 1},
              {"deviation", game.actions(s.player)[s.deviation]},
              {"slack", s.slack}};
}

}  // namespace

Game GameFromJson(const Json& j) {
  try {
    auto labels = [&](const char* name) {
      const Json& a = Field(j, name);
      if (!a.is_array()) throw ValidationError(std::string(name) + " must be an array");
      std::vector<std::string> out;
      for (const auto& v : a) out.push_back(v.get<std::string>());
      return out;
    };
    return Game(labels("actions1"), labels("actions2"),
                MatrixFromJson(Field(j, "u1"), "u1"),
                MatrixFromJson(Field(j, "u2"), "u2"));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad game JSON: ") + e.what());
  }
}

Json GameToJson(const Game& game) {
  return Json{{"actions1", game.actions1()},
              {"actions2", game.actions2()},
              {"u1", game.u1().ToRows()},
              {"u2", game.u2().ToRows()}};
}

JointDistribution JointFromJson(const Json& j, std::size_t n1, std::size_t n2) {
  const Json* probs = &j;
  if (j.is_object()) {
    probs = &Field(j, "probs");
    if (j.contains("n1") && j.at("n1").get<std::size_t>() != n1) {
      throw DimensionError("joint distribution n1", n1, j.at("n1").get<std::size_t>());
    }
    if (j.contains("n2") && j.at("n2").get<std::size_t>() != n2) {
      throw DimensionError("joint distribution n2", n2, j.at("n2").get<std::size_t>());
    }
  }
  return JointDistribution::FromProbs(n1, n2, DoubleArray(*probs, "probs"));
}

Json JointToJson(const JointDistribution& sigma) { return Json(sigma.probs()); }

FunctionPairDistribution FunctionPairFromJson(const Json& j) {
  try {
    return FunctionPairDistribution::FromProbs(
        Field(j, "n1").get<std::size_t>(), Field(j, "n2").get<std::size_t>(),
        DoubleArray(Field(j, "probs"), "probs"));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("bad function-pair JSON: ") + e.what());
  }
}

Json FunctionPairToJson(const FunctionPairDistribution& pi) {
  return Json{{"n1", pi.n1()}, {"n2", pi.n2()}, {"probs", pi.probs()}};
}

TransitionMatrix TransitionFromJson(const Json& j, std::size_t n1,
                                    std::size_t n2) {
  const std::size_t dim = Field(j, "dim").get<std::size_t>();
  if (dim != n1 * n2) throw DimensionError("transition dim", n1 * n2, dim);
  return TransitionMatrix::FromMatrix(n1, n2, MatrixFromJson(Field(j, "rows"), "rows"));
}

Json TransitionToJson(const TransitionMatrix& m) {
  return Json{{"dim", m.dim()}, {"rows", m.matrix().ToRows()}};
}

Json VerdictToJson(const EquilibriumVerdict& verdict, const Game& game) {
  Json violations = Json::array();
  for (const auto& s : verdict.violations) violations.push_back(SlackToJson(s, game));
  Json slacks = Json::array();
  for (const auto& s : verdict.slacks) slacks.push_back(SlackToJson(s, game));
  return Json{{"equilibrium", verdict.is_equilibrium},
              {"witness", verdict.witness ? JointToJson(*verdict.witness) : Json()},
              {"violations", violations},
              {"slacks", slacks}};
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace policy_dyn
