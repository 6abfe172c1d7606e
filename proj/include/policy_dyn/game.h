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

#ifndef POLICY_DYN_GAME_H_
#define POLICY_DYN_GAME_H_

// Two-player bimatrix games, distributions over actions and the small
// amount of linear algebra shared by every other module.
//
// Joint actions (i, j) with i in A1 and j in A2 are stored row-major with
// player 1 major: index = i * n2 + j. Every module relies on this layout.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace policy_dyn {

enum class Player { kOne = 1, kTwo = 2 };

inline Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
inline int PlayerIndex(Player p) { return p == Player::kOne ? 0 : 1; }
Player PlayerFromInt(int p);

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);
  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  const std::vector<double>& data() const { return data_; }

  Matrix Transposed() const;
  std::vector<std::vector<double>> ToRows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Tolerance used when accepting probability vectors from outside the
// library (files, user code).
inline constexpr double kSimplexTolerance = 1e-12;

// Probability vector over one player's action set.
class MixedStrategy {
 public:
  // Validates entries >= 0 and |sum - 1| <= kSimplexTolerance, then
  // renormalizes once.
  static MixedStrategy FromProbs(std::vector<double> probs);
  // Normalizes a nonnegative weight vector with positive sum.
  static MixedStrategy FromWeights(std::span<const double> weights);
  static MixedStrategy Dirac(std::size_t n, std::size_t action);
  static MixedStrategy Uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  friend bool operator==(const MixedStrategy&,
                         const MixedStrategy&) = default;

 private:
  explicit MixedStrategy(std::vector<double> probs)
      : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

// Probability vector over A = A1 x A2 in the canonical joint order.
class JointDistribution {
 public:
  static JointDistribution FromProbs(std::size_t n1, std::size_t n2,
                                     std::vector<double> probs);
  static JointDistribution FromWeights(std::size_t n1, std::size_t n2,
                                       std::span<const double> weights);
  static JointDistribution Dirac(std::size_t n1, std::size_t n2,
                                 std::size_t i, std::size_t j);
  static JointDistribution Uniform(std::size_t n1, std::size_t n2);

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  double at(std::size_t i, std::size_t j) const { return probs_[i * n2_ + j]; }
  const std::vector<double>& probs() const { return probs_; }

  MixedStrategy Marginal(Player p) const;

  friend bool operator==(const JointDistribution&,
                         const JointDistribution&) = default;

 private:
  JointDistribution(std::size_t n1, std::size_t n2, std::vector<double> probs)
      : n1_(n1), n2_(n2), probs_(std::move(probs)) {}
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::vector<double> probs_;
};

inline std::size_t JointIndex(std::size_t i, std::size_t j, std::size_t n2) {
  return i * n2 + j;
}

// A bimatrix game with utilities in [0,1].
class Game {
 public:
  // Throws ValidationError on utilities outside [0,1], non-finite entries,
  // empty action sets or shape mismatches.
  Game(std::vector<std::string> actions1, std::vector<std::string> actions2,
       Matrix u1, Matrix u2);

  std::size_t n1() const { return actions1_.size(); }
  std::size_t n2() const { return actions2_.size(); }
  std::size_t num_joint() const { return n1() * n2(); }
  std::size_t num_actions(Player p) const {
    return p == Player::kOne ? n1() : n2();
  }
  const std::vector<std::string>& actions1() const { return actions1_; }
  const std::vector<std::string>& actions2() const { return actions2_; }
  const std::vector<std::string>& actions(Player p) const {
    return p == Player::kOne ? actions1_ : actions2_;
  }
  const Matrix& u1() const { return u1_; }
  const Matrix& u2() const { return u2_; }
  const Matrix& utility(Player p) const {
    return p == Player::kOne ? u1_ : u2_;
  }

  // Utility of player p when player 1 plays i and player 2 plays j.
  double Utility(Player p, std::size_t i, std::size_t j) const {
    return utility(p)(i, j);
  }
  // Utilities of every own action of p against a fixed opponent action.
  std::vector<double> UtilityVector(Player p, std::size_t opponent_action) const;
  // Expected utility of each own action of p against an opponent strategy.
  std::vector<double> ExpectedUtilityVector(Player p,
                                            const MixedStrategy& opponent) const;

  std::size_t ActionIndex(Player p, const std::string& label) const;

  // The 2x2 game used to exhibit a policy equilibrium that is not a CCE:
  // u1 = [[3/4, 0], [1, 0]], u2 = 1 everywhere, actions {a,b} x {c,d}.
  static Game WorkedExample();

  friend bool operator==(const Game&, const Game&) = default;

 private:
  std::vector<std::string> actions1_;
  std::vector<std::string> actions2_;
  Matrix u1_;
  Matrix u2_;
};

// E_{(a,b)~sigma}[u_p(a,b)]. Throws DimensionError when sigma does not
// cover the game's joint action set.
double ExpectedUtility(const JointDistribution& sigma, const Game& game,
                       Player player);

JointDistribution ProductDistribution(const MixedStrategy& p1,
                                      const MixedStrategy& p2);

// Sum |x_i - y_i|.
double L1Distance(std::span<const double> x, std::span<const double> y);

// Mixing weight sqrt(|A| * epsilon_tilde) of the perturbed strategy.
double PerturbationWeight(double epsilon_tilde, std::size_t joint_size);

// (1 - w) p + w / n with w = sqrt(joint_size * epsilon_tilde); every entry of
// the result is at least w / n. Throws ValidationError when w is outside
// [0,1].
MixedStrategy PerturbStrategy(const MixedStrategy& p, double epsilon_tilde,
                              std::size_t joint_size);

// Mixes p with the uniform distribution using weight w in [0,1].
MixedStrategy MixWithUniform(const MixedStrategy& p, double weight);

struct SpectralNormOptions {
  double relative_tolerance = 1e-10;
  int max_iterations = 10000;
};

// Largest singular value by power iteration on M^T M. Throws
// ConvergenceError carrying the last iterate when the tolerance is not met.
double SpectralNorm(const Matrix& m, const SpectralNormOptions& options = {});

}  // namespace policy_dyn

#endif  // POLICY_DYN_GAME_H_
