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


#include "policy_dyn/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "policy_dyn/error.h"

namespace policy_dyn {
namespace {

void CheckProbabilityEntries(std::span<const double> probs,
                             const char* what) {
  if (probs.empty()) throw ValidationError(std::string(what) + ": empty");
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw ValidationError(std::string(what) +
                            ": entries must be finite and nonnegative");
    }
  }
}

std::vector<double> ValidateSimplex(std::vector<double> probs,
                                    const char* what) {
  CheckProbabilityEntries(probs, what);
  double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw ValidationError(std::string(what) + ": entries sum to " +
                          std::to_string(sum) + ", not 1");
  }
  for (double& p : probs) p /= sum;
  return probs;
}

std::vector<double> Normalize(std::span<const double> weights,
                              const char* what) {
  CheckProbabilityEntries(weights, what);
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) {
    throw ValidationError(std::string(what) + ": weights sum to zero");
  }
  std::vector<double> out(weights.begin(), weights.end());
  for (double& p : out) p /= sum;
  return out;
}

}  // namespace

Player PlayerFromInt(int p) {
  if (p == 1) return Player::kOne;
  if (p == 2) return Player::kTwo;
  throw ValidationError("player must be 1 or 2, got " + std::to_string(p));
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw DimensionError("matrix row " + std::to_string(i), m.cols_,
                           rows[i].size());
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    out[i].assign(row(i).begin(), row(i).end());
  return out;
}

// --------------------------------------------------------- MixedStrategy

MixedStrategy MixedStrategy::FromProbs(std::vector<double> probs) {
  return MixedStrategy(ValidateSimplex(std::move(probs), "mixed strategy"));
}

MixedStrategy MixedStrategy::FromWeights(std::span<const double> weights) {
  return MixedStrategy(Normalize(weights, "mixed strategy weights"));
}

MixedStrategy MixedStrategy::Dirac(std::size_t n, std::size_t action) {
  if (action >= n) {
    throw ValidationError("action index " + std::to_string(action) +
                          " out of range for " + std::to_string(n) +
                          " actions");
  }
  std::vector<double> probs(n, 0.0);
  probs[action] = 1.0;
  return MixedStrategy(std::move(probs));
}

MixedStrategy MixedStrategy::Uniform(std::size_t n) {
  if (n == 0) throw ValidationError("uniform strategy over zero actions");
  return MixedStrategy(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

// ----------------------------------------------------- JointDistribution

JointDistribution JointDistribution::FromProbs(std::size_t n1, std::size_t n2,
                                               std::vector<double> probs) {
  if (probs.size() != n1 * n2) {
    throw DimensionError("joint distribution", n1 * n2, probs.size());
  }
  return JointDistribution(n1, n2,
                           ValidateSimplex(std::move(probs),
                                           "joint distribution"));
}

JointDistribution JointDistribution::FromWeights(
    std::size_t n1, std::size_t n2, std::span<const double> weights) {
  if (weights.size() != n1 * n2) {
    throw DimensionError("joint distribution", n1 * n2, weights.size());
  }
  return JointDistribution(n1, n2,
                           Normalize(weights, "joint distribution weights"));
}

JointDistribution JointDistribution::Dirac(std::size_t n1, std::size_t n2,
                                           std::size_t i, std::size_t j) {
  if (i >= n1 || j >= n2) {
    throw ValidationError("joint action out of range");
  }
  std::vector<double> probs(n1 * n2, 0.0);
  probs[JointIndex(i, j, n2)] = 1.0;
  return JointDistribution(n1, n2, std::move(probs));
}

JointDistribution JointDistribution::Uniform(std::size_t n1, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw ValidationError("empty joint action set");
  return JointDistribution(
      n1, n2, std::vector<double>(n1 * n2, 1.0 / static_cast<double>(n1 * n2)));
}

MixedStrategy JointDistribution::Marginal(Player p) const {
  std::size_t n = p == Player::kOne ? n1_ : n2_;
  std::vector<double> m(n, 0.0);
  for (std::size_t i = 0; i < n1_; ++i)
    for (std::size_t j = 0; j < n2_; ++j)
      m[p == Player::kOne ? i : j] += at(i, j);
  return MixedStrategy::FromWeights(m);
}

// ------------------------------------------------------------------ Game

Game::Game(std::vector<std::string> actions1, std::vector<std::string> actions2,
           Matrix u1, Matrix u2)
    : actions1_(std::move(actions1)),
      actions2_(std::move(actions2)),
      u1_(std::move(u1)),
      u2_(std::move(u2)) {
  if (actions1_.empty() || actions2_.empty()) {
    throw ValidationError("game needs at least one action per player");
  }
  for (const Matrix* u : {&u1_, &u2_}) {
    if (u->rows() != n1()) throw DimensionError("utility rows", n1(), u->rows());
    if (u->cols() != n2()) throw DimensionError("utility cols", n2(), u->cols());
    for (double v : u->data()) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw ValidationError("utility " + std::to_string(v) +
                              " outside [0,1]");
      }
    }
  }
}

std::vector<double> Game::UtilityVector(Player p,
                                        std::size_t opponent_action) const {
  std::size_t n = num_actions(p);
  if (opponent_action >= num_actions(Opponent(p))) {
    throw ValidationError("opponent action out of range");
  }
  std::vector<double> v(n);
  for (std::size_t a = 0; a < n; ++a) {
    v[a] = p == Player::kOne ? u1_(a, opponent_action)
                             : u2_(opponent_action, a);
  }
  return v;
}

std::vector<double> Game::ExpectedUtilityVector(
    Player p, const MixedStrategy& opponent) const {
  std::size_t n = num_actions(p);
  std::size_t k = num_actions(Opponent(p));
  if (opponent.size() != k) {
    throw DimensionError("opponent strategy", k, opponent.size());
  }
  std::vector<double> v(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < k; ++b)
      v[a] += opponent[b] * (p == Player::kOne ? u1_(a, b) : u2_(b, a));
  return v;
}

std::size_t Game::ActionIndex(Player p, const std::string& label) const {
  const auto& acts = actions(p);
  auto it = std::find(acts.begin(), acts.end(), label);
  if (it == acts.end()) {
    throw ValidationError("unknown action label '" + label + "'");
  }
  return static_cast<std::size_t>(it - acts.begin());
}

Game Game::WorkedExample() {
  return Game({"a", "b"}, {"c", "d"},
              Matrix::FromRows({{0.75, 0.0}, {1.0, 0.0}}),
              Matrix::FromRows({{1.0, 1.0}, {1.0, 1.0}}));
}

// ----------------------------------------------------------- Operations

double ExpectedUtility(const JointDistribution& sigma, const Game& game,
                       Player player) {
  if (sigma.size() != game.num_joint()) {
    throw DimensionError("joint distribution", game.num_joint(), sigma.size());
  }
  if (sigma.n2() != game.n2()) {
    throw DimensionError("joint distribution player-2 actions", game.n2(),
                         sigma.n2());
  }
  const Matrix& u = game.utility(player);
  double total = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) total += sigma[k] * u.data()[k];
  return total;
}

JointDistribution ProductDistribution(const MixedStrategy& p1,
                                      const MixedStrategy& p2) {
  std::vector<double> probs(p1.size() * p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i)
    for (std::size_t j = 0; j < p2.size(); ++j)
      probs[JointIndex(i, j, p2.size())] = p1[i] * p2[j];
  return JointDistribution::FromWeights(p1.size(), p2.size(), probs);
}

double L1Distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("l1 distance", x.size(), y.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += std::abs(x[i] - y[i]);
  return d;
}

double PerturbationWeight(double epsilon_tilde, std::size_t joint_size) {
  return std::sqrt(static_cast<double>(joint_size) * epsilon_tilde);
}

MixedStrategy MixWithUniform(const MixedStrategy& p, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw ValidationError("mixing weight " + std::to_string(weight) +
                          " outside [0,1]");
  }
  std::vector<double> out(p.size());
  double floor = weight / static_cast<double>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[i] = (1.0 - weight) * p[i] + floor;
  return MixedStrategy::FromWeights(out);
}

MixedStrategy PerturbStrategy(const MixedStrategy& p, double epsilon_tilde,
                              std::size_t joint_size) {
  if (!(epsilon_tilde >= 0.0)) {
    throw ValidationError("perturbation epsilon must be nonnegative");
  }
  return MixWithUniform(p, PerturbationWeight(epsilon_tilde, joint_size));
}

double SpectralNorm(const Matrix& m, const SpectralNormOptions& options) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) throw ValidationError("non-finite matrix entry");
  }
  const std::size_t n = m.cols();
  if (n == 0 || m.rows() == 0) return 0.0;
  // G = M^T M, symmetric positive semidefinite.
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, i) * m(r, j);
      g(i, j) = s;
    }
  bool zero = std::all_of(g.data().begin(), g.data().end(),
                          [](double v) { return v == 0.0; });
  if (zero) return 0.0;

  // A fixed non-symmetric start avoids landing exactly orthogonal to the
  // top eigenvector for structured inputs.
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i);
  auto normalize = [](std::vector<double>& x) {
    double s = 0.0;
    for (double e : x) s += e * e;
    s = std::sqrt(s);
    for (double& e : x) e /= s;
    return s;
  };
  normalize(v);
  double lambda = 0.0;
  double residual = 0.0;
  std::vector<double> w(n);
  for (int it = 0; it < options.max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += g(i, j) * v[j];
      w[i] = s;
    }
    double next = normalize(w);
    if (next == 0.0) return 0.0;
    residual = std::abs(next - lambda) / next;
    lambda = next;
    v.swap(w);
    if (it > 0 && residual <= options.relative_tolerance) {
      return std::sqrt(lambda);
    }
  }
  throw ConvergenceError("spectral norm power iteration did not converge", v,
                         residual);
}

}  // namespace policy_dyn
