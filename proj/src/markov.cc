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


#include "policy_dyn/markov.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "policy_dyn/error.h"
#include "policy_dyn/simplex.h"

namespace policy_dyn {
namespace {

// base^exp, or cap + 1 once the value exceeds cap.
std::size_t CappedPow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::size_t NumF(std::size_t n1, std::size_t n2) {
  return CappedPow(n1, n2, std::numeric_limits<std::size_t>::max() / 4);
}
std::size_t NumG(std::size_t n1, std::size_t n2) {
  return CappedPow(n2, n1, std::numeric_limits<std::size_t>::max() / 4);
}

// succ[k * |A| + x] = successor of joint state x under pair k.
std::vector<std::size_t> SuccessorTable(std::size_t n1, std::size_t n2,
                                        std::size_t cap) {
  const std::size_t dim = n1 * n2;
  std::vector<std::size_t> succ;
  succ.reserve(FunctionPairCount(n1, n2, cap) * dim);
  ForEachFunctionPair(
      n1, n2,
      [&](const FunctionPair& p) {
        for (std::size_t a = 0; a < n1; ++a)
          for (std::size_t b = 0; b < n2; ++b)
            succ.push_back(JointIndex(p.f[b], p.g[a], n2));
      },
      cap);
  return succ;
}

void FillDeadRow(Matrix& m, std::size_t i, DeadStateRule rule,
                 const std::vector<double>& mean) {
  auto row = m.row(i);
  std::fill(row.begin(), row.end(), 0.0);
  if (rule == DeadStateRule::kSelfLoop) {
    row[i] = 1.0;
  } else {
    std::copy(mean.begin(), mean.end(), row.begin());
  }
}

}  // namespace

// ------------------------------------------------------ TransitionMatrix

TransitionMatrix TransitionMatrix::FromMatrix(
    std::size_t n1, std::size_t n2, Matrix m,
    std::vector<std::size_t> dead_states) {
  const std::size_t dim = n1 * n2;
  if (m.rows() != dim) throw DimensionError("transition matrix rows", dim, m.rows());
  if (m.cols() != dim) throw DimensionError("transition matrix cols", dim, m.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    auto row = m.row(i);
    double sum = 0.0;
    for (double v : row) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("transition entries must be finite and >= 0");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ValidationError("transition row " + std::to_string(i) +
                            " sums to " + std::to_string(sum));
    }
    for (double& v : row) v /= sum;
  }
  TransitionMatrix t;
  t.n1_ = n1;
  t.n2_ = n2;
  t.m_ = std::move(m);
  t.dead_ = std::move(dead_states);
  return t;
}

// ------------------------------------------------------ Function spaces

std::size_t FunctionPairCount(std::size_t n1, std::size_t n2, std::size_t cap) {
  if (n1 == 0 || n2 == 0) throw ValidationError("empty action set");
  std::size_t nf = CappedPow(n1, n2, cap);
  std::size_t ng = CappedPow(n2, n1, cap);
  if (nf > cap || ng > cap || nf > cap / ng) {
    throw CapacityError("function space " + std::to_string(n1) + "^" +
                        std::to_string(n2) + " * " + std::to_string(n2) + "^" +
                        std::to_string(n1) + " exceeds the cap of " +
                        std::to_string(cap) + " pairs");
  }
  return nf * ng;
}

std::vector<std::size_t> DecodeF(std::size_t f_index, std::size_t n1,
                                 std::size_t n2) {
  std::vector<std::size_t> f(n2);
  for (std::size_t b = n2; b-- > 0;) {
    f[b] = f_index % n1;
    f_index /= n1;
  }
  return f;
}

std::vector<std::size_t> DecodeG(std::size_t g_index, std::size_t n1,
                                 std::size_t n2) {
  std::vector<std::size_t> g(n1);
  for (std::size_t a = n1; a-- > 0;) {
    g[a] = g_index % n2;
    g_index /= n2;
  }
  return g;
}

std::size_t EncodeF(std::span<const std::size_t> f, std::size_t n1) {
  std::size_t idx = 0;
  for (std::size_t v : f) {
    if (v >= n1) throw ValidationError("response function value out of range");
    idx = idx * n1 + v;
  }
  return idx;
}

std::size_t EncodeG(std::span<const std::size_t> g, std::size_t n2) {
  return EncodeF(g, n2);
}

void ForEachFunctionPair(std::size_t n1, std::size_t n2,
                         const std::function<void(const FunctionPair&)>& fn,
                         std::size_t cap) {
  FunctionPairCount(n1, n2, cap);
  const std::size_t nf = NumF(n1, n2);
  const std::size_t ng = NumG(n1, n2);
  FunctionPair p;
  for (std::size_t fi = 0; fi < nf; ++fi) {
    p.f = DecodeF(fi, n1, n2);
    for (std::size_t gi = 0; gi < ng; ++gi) {
      p.g = DecodeG(gi, n1, n2);
      p.index = fi * ng + gi;
      fn(p);
    }
  }
}

std::vector<FunctionPair> EnumerateFunctionPairs(std::size_t n1,
                                                 std::size_t n2,
                                                 std::size_t cap) {
  std::vector<FunctionPair> out;
  out.reserve(FunctionPairCount(n1, n2, cap));
  ForEachFunctionPair(n1, n2, [&](const FunctionPair& p) { out.push_back(p); },
                      cap);
  return out;
}

std::size_t ConstantFunctionIndex(Player player, std::size_t action,
                                  std::size_t n1, std::size_t n2) {
  if (player == Player::kOne) {
    if (action >= n1) throw ValidationError("action out of range");
    return EncodeF(std::vector<std::size_t>(n2, action), n1);
  }
  if (action >= n2) throw ValidationError("action out of range");
  return EncodeG(std::vector<std::size_t>(n1, action), n2);
}

// --------------------------------------------- FunctionPairDistribution

FunctionPairDistribution FunctionPairDistribution::FromProbs(
    std::size_t n1, std::size_t n2, std::vector<double> probs,
    std::size_t cap) {
  const std::size_t count = FunctionPairCount(n1, n2, cap);
  if (probs.size() != count) {
    throw DimensionError("function-pair distribution", count, probs.size());
  }
  MixedStrategy validated = MixedStrategy::FromProbs(std::move(probs));
  return FunctionPairDistribution(n1, n2, NumF(n1, n2), NumG(n1, n2),
                                  validated.probs());
}

FunctionPairDistribution FunctionPairDistribution::FromWeights(
    std::size_t n1, std::size_t n2, std::span<const double> weights,
    std::size_t cap) {
  const std::size_t count = FunctionPairCount(n1, n2, cap);
  if (weights.size() != count) {
    throw DimensionError("function-pair distribution", count, weights.size());
  }
  MixedStrategy normalized = MixedStrategy::FromWeights(weights);
  return FunctionPairDistribution(n1, n2, NumF(n1, n2), NumG(n1, n2),
                                  normalized.probs());
}

FunctionPairDistribution FunctionPairDistribution::Dirac(std::size_t n1,
                                                         std::size_t n2,
                                                         std::size_t f_index,
                                                         std::size_t g_index) {
  const std::size_t count = FunctionPairCount(n1, n2);
  const std::size_t ng = NumG(n1, n2);
  if (f_index >= NumF(n1, n2) || g_index >= ng) {
    throw ValidationError("function index out of range");
  }
  std::vector<double> probs(count, 0.0);
  probs[f_index * ng + g_index] = 1.0;
  return FunctionPairDistribution(n1, n2, NumF(n1, n2), ng, std::move(probs));
}

FunctionPairDistribution FunctionPairDistribution::Uniform(std::size_t n1,
                                                           std::size_t n2) {
  const std::size_t count = FunctionPairCount(n1, n2);
  return FunctionPairDistribution(
      n1, n2, NumF(n1, n2), NumG(n1, n2),
      std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

std::vector<double> FunctionPairDistribution::MarginalF() const {
  std::vector<double> m(num_f_, 0.0);
  for (std::size_t fi = 0; fi < num_f_; ++fi)
    for (std::size_t gi = 0; gi < num_g_; ++gi) m[fi] += probs_[fi * num_g_ + gi];
  return m;
}

std::vector<double> FunctionPairDistribution::MarginalG() const {
  std::vector<double> m(num_g_, 0.0);
  for (std::size_t fi = 0; fi < num_f_; ++fi)
    for (std::size_t gi = 0; gi < num_g_; ++gi) m[gi] += probs_[fi * num_g_ + gi];
  return m;
}

// ---------------------------------------------------- Empirical chains

EmpiricalChainAccumulator::EmpiricalChainAccumulator(
    std::size_t n1, std::size_t n2, EmpiricalChainOptions options)
    : n1_(n1),
      n2_(n2),
      options_(options),
      pair_sum_(n1 * n2 * n1 * n2, 0.0),
      visit_sum_(n1 * n2, 0.0),
      mean_sum_(n1 * n2, 0.0) {}

void EmpiricalChainAccumulator::Add(const JointDistribution& p) {
  const std::size_t dim = n1_ * n2_;
  if (p.size() != dim) throw DimensionError("joint strategy", dim, p.size());
  const std::vector<double>& from = options_.lagged ? previous_ : p.probs();
  if (!options_.lagged || rounds_ > 0) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double pi = from[i];
      if (pi == 0.0) continue;
      visit_sum_[i] += pi;
      double* row = &pair_sum_[i * dim];
      for (std::size_t j = 0; j < dim; ++j) row[j] += pi * p[j];
    }
  }
  for (std::size_t i = 0; i < dim; ++i) mean_sum_[i] += p[i];
  if (options_.lagged) previous_ = p.probs();
  ++rounds_;
}

JointDistribution EmpiricalChainAccumulator::Mean() const {
  if (rounds_ == 0) throw ValidationError("no rounds accumulated");
  std::vector<double> mean = mean_sum_;
  for (double& v : mean) v /= static_cast<double>(rounds_);
  return JointDistribution::FromWeights(n1_, n2_, mean);
}

TransitionMatrix EmpiricalChainAccumulator::Chain() const {
  if (rounds_ == 0) throw ValidationError("empirical chain needs T >= 1");
  const std::size_t dim = n1_ * n2_;
  const std::vector<double> mean = Mean().probs();
  Matrix m(dim, dim);
  std::vector<std::size_t> dead;
  for (std::size_t i = 0; i < dim; ++i) {
    if (visit_sum_[i] > 0.0) {
      double sum = 0.0;
      for (std::size_t j = 0; j < dim; ++j) sum += pair_sum_[i * dim + j];
      if (sum > 0.0) {
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = pair_sum_[i * dim + j] / sum;
        continue;
      }
    }
    dead.push_back(i);
    FillDeadRow(m, i, options_.dead_rule, mean);
  }
  return TransitionMatrix::FromMatrix(n1_, n2_, std::move(m), std::move(dead));
}

TransitionMatrix EmpiricalChain(std::span<const JointDistribution> strategies,
                                EmpiricalChainOptions options) {
  if (strategies.empty()) throw ValidationError("empirical chain needs T >= 1");
  EmpiricalChainAccumulator acc(strategies[0].n1(), strategies[0].n2(),
                                options);
  for (const auto& p : strategies) acc.Add(p);
  return acc.Chain();
}

ObservedChainAccumulator::ObservedChainAccumulator(std::size_t n1,
                                                   std::size_t n2)
    : n1_(n1),
      n2_(n2),
      counts_(n1 * n2 * n1 * n2, 0.0),
      visits_(n1 * n2, 0.0) {}

void ObservedChainAccumulator::Add(std::size_t joint_action) {
  const std::size_t dim = n1_ * n2_;
  if (joint_action >= dim) throw ValidationError("joint action out of range");
  if (rounds_ > 0) counts_[previous_ * dim + joint_action] += 1.0;
  visits_[joint_action] += 1.0;
  previous_ = joint_action;
  ++rounds_;
}

JointDistribution ObservedChainAccumulator::Mean() const {
  if (rounds_ == 0) throw ValidationError("no rounds accumulated");
  return JointDistribution::FromWeights(n1_, n2_, visits_);
}

TransitionMatrix ObservedChainAccumulator::Chain() const {
  if (rounds_ < 2) throw ValidationError("observed chain needs T >= 2");
  const std::size_t dim = n1_ * n2_;
  Matrix m(dim, dim);
  std::vector<std::size_t> dead;
  for (std::size_t i = 0; i < dim; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < dim; ++j) sum += counts_[i * dim + j];
    if (sum > 0.0) {
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = counts_[i * dim + j] / sum;
    } else {
      dead.push_back(i);
      m(i, i) = 1.0;
    }
  }
  return TransitionMatrix::FromMatrix(n1_, n2_, std::move(m), std::move(dead));
}

TransitionMatrix ObservedChain(const PlayHistory& history) {
  if (history.T() < 2) throw ValidationError("observed chain needs T >= 2");
  ObservedChainAccumulator acc(history.n1, history.n2);
  for (std::size_t t = 0; t < history.T(); ++t) {
    acc.Add(JointIndex(history.actions1[t], history.actions2[t], history.n2));
  }
  return acc.Chain();
}

// ------------------------------------------------------ Induced chains

TransitionMatrix InducedChain(const FunctionPairDistribution& pi) {
  const std::size_t n1 = pi.n1();
  const std::size_t n2 = pi.n2();
  const std::size_t dim = n1 * n2;
  Matrix m(dim, dim);
  ForEachFunctionPair(n1, n2, [&](const FunctionPair& p) {
    const double w = pi[p.index];
    if (w == 0.0) return;
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        m(JointIndex(a, b, n2), JointIndex(p.f[b], p.g[a], n2)) += w;
  });
  return TransitionMatrix::FromMatrix(n1, n2, std::move(m));
}

DeviationChainResult DeviationChain(const FunctionPairDistribution& pi,
                                    Player player, std::size_t action) {
  const std::size_t n1 = pi.n1();
  const std::size_t n2 = pi.n2();
  const std::size_t c = ConstantFunctionIndex(player, action, n1, n2);
  std::vector<double> probs(pi.size(), 0.0);
  if (player == Player::kOne) {
    std::vector<double> mg = pi.MarginalG();
    for (std::size_t gi = 0; gi < pi.num_g(); ++gi) probs[c * pi.num_g() + gi] = mg[gi];
  } else {
    std::vector<double> mf = pi.MarginalF();
    for (std::size_t fi = 0; fi < pi.num_f(); ++fi) probs[fi * pi.num_g() + c] = mf[fi];
  }
  FunctionPairDistribution dev = FunctionPairDistribution::FromWeights(n1, n2, probs);
  TransitionMatrix chain = InducedChain(dev);
  return {std::move(dev), std::move(chain)};
}

JointDistribution DeviationStationary(const FunctionPairDistribution& pi,
                                      Player player, std::size_t action) {
  const std::size_t n1 = pi.n1();
  const std::size_t n2 = pi.n2();
  std::vector<double> sigma(n1 * n2, 0.0);
  if (player == Player::kOne) {
    if (action >= n1) throw ValidationError("deviation action out of range");
    std::vector<double> mg = pi.MarginalG();
    for (std::size_t gi = 0; gi < pi.num_g(); ++gi) {
      sigma[JointIndex(action, DecodeG(gi, n1, n2)[action], n2)] += mg[gi];
    }
  } else {
    if (action >= n2) throw ValidationError("deviation action out of range");
    std::vector<double> mf = pi.MarginalF();
    for (std::size_t fi = 0; fi < pi.num_f(); ++fi) {
      sigma[JointIndex(DecodeF(fi, n1, n2)[action], action, n2)] += mf[fi];
    }
  }
  JointDistribution out = JointDistribution::FromWeights(n1, n2, sigma);
  const double residual =
      StationaryResidual(DeviationChain(pi, player, action).chain, out);
  if (residual > 1e-10) {
    throw InvariantError("deviation stationary residual " +
                         std::to_string(residual));
  }
  return out;
}

double StationaryResidual(const TransitionMatrix& m,
                          const JointDistribution& sigma) {
  const std::size_t dim = m.dim();
  if (sigma.size() != dim) throw DimensionError("stationary residual", dim, sigma.size());
  double r = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < dim; ++i) v += sigma[i] * m(i, j);
    r += std::abs(v - sigma[j]);
  }
  return r;
}

// ------------------------------------- Empirical function distribution

FunctionDistributionFit FitEmpiricalFunctionDistribution(
    std::span<const JointDistribution> strategies,
    const FunctionDistributionOptions& options) {
  if (strategies.empty()) throw ValidationError("need at least one round");
  const std::size_t n1 = strategies[0].n1();
  const std::size_t n2 = strategies[0].n2();
  const std::size_t dim = n1 * n2;
  const std::size_t count = FunctionPairCount(n1, n2, options.cap);

  EmpiricalChainAccumulator acc(
      n1, n2, EmpiricalChainOptions{options.lagged, options.dead_rule});
  for (const auto& p : strategies) acc.Add(p);
  TransitionMatrix target = acc.Chain();
  const std::vector<double> mean = acc.Mean().probs();

  // Per-input kernels: K1(. | b) averages the player-1 coordinate of the
  // rows (a1, b) weighted by the mean visit mass, K2(. | a) symmetrically.
  std::vector<double> k1(n2 * n1, 0.0);  // k1[b * n1 + a']
  std::vector<double> k2(n1 * n2, 0.0);  // k2[a * n2 + b']
  for (std::size_t b = 0; b < n2; ++b) {
    double total = 0.0;
    for (std::size_t a1 = 0; a1 < n1; ++a1) total += mean[JointIndex(a1, b, n2)];
    for (std::size_t a1 = 0; a1 < n1; ++a1) {
      double w = total > 0.0 ? mean[JointIndex(a1, b, n2)] / total
                             : 1.0 / static_cast<double>(n1);
      if (w == 0.0) continue;
      auto row = target.row(JointIndex(a1, b, n2));
      for (std::size_t a2 = 0; a2 < n1; ++a2)
        for (std::size_t b2 = 0; b2 < n2; ++b2)
          k1[b * n1 + a2] += w * row[JointIndex(a2, b2, n2)];
    }
  }
  for (std::size_t a = 0; a < n1; ++a) {
    double total = 0.0;
    for (std::size_t b1 = 0; b1 < n2; ++b1) total += mean[JointIndex(a, b1, n2)];
    for (std::size_t b1 = 0; b1 < n2; ++b1) {
      double w = total > 0.0 ? mean[JointIndex(a, b1, n2)] / total
                             : 1.0 / static_cast<double>(n2);
      if (w == 0.0) continue;
      auto row = target.row(JointIndex(a, b1, n2));
      for (std::size_t a2 = 0; a2 < n1; ++a2)
        for (std::size_t b2 = 0; b2 < n2; ++b2)
          k2[a * n2 + b2] += w * row[JointIndex(a2, b2, n2)];
    }
  }
  std::vector<double> product(count, 0.0);
  ForEachFunctionPair(
      n1, n2,
      [&](const FunctionPair& p) {
        double w = 1.0;
        for (std::size_t b = 0; b < n2 && w > 0.0; ++b) w *= k1[b * n1 + p.f[b]];
        for (std::size_t a = 0; a < n1 && w > 0.0; ++a) w *= k2[a * n2 + p.g[a]];
        product[p.index] = w;
      },
      options.cap);

  auto l1_gap = [&](const TransitionMatrix& induced, double* max_entry) {
    double l1 = 0.0;
    double mx = 0.0;
    for (std::size_t k = 0; k < dim * dim; ++k) {
      double d = std::abs(induced.matrix().data()[k] - target.matrix().data()[k]);
      l1 += d;
      mx = std::max(mx, d);
    }
    if (max_entry) *max_entry = mx;
    return l1;
  };

  FunctionPairDistribution pb =
      FunctionPairDistribution::FromWeights(n1, n2, product, options.cap);
  double max_entry = 0.0;
  double l1 = l1_gap(InducedChain(pb), &max_entry);
  if (max_entry <= options.exact_tolerance) {
    return {std::move(pb), std::move(target), l1, true};
  }

  // LP: minimize sum |induced(pi) - target| over the simplex on F1 x F2.
  const std::size_t num_vars = count + 2 * dim * dim;
  if (num_vars > options.lp_variable_cap) {
    throw CapacityError("empirical function-distribution LP with " +
                        std::to_string(num_vars) + " variables exceeds cap " +
                        std::to_string(options.lp_variable_cap));
  }
  const std::vector<std::size_t> succ = SuccessorTable(n1, n2, options.cap);
  LinearProgram lp(num_vars);
  std::vector<double> objective(num_vars, 0.0);
  for (std::size_t k = count; k < num_vars; ++k) objective[k] = 1.0;
  lp.SetObjective(objective);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<double> row(num_vars, 0.0);
      for (std::size_t k = 0; k < count; ++k) {
        if (succ[k * dim + i] == j) row[k] = 1.0;
      }
      const std::size_t e = count + 2 * (i * dim + j);
      row[e] = 1.0;       // target exceeds induced
      row[e + 1] = -1.0;  // induced exceeds target
      lp.AddConstraint(std::move(row), ConstraintSense::kEqual, target(i, j));
    }
  }
  std::vector<double> ones(num_vars, 0.0);
  std::fill(ones.begin(), ones.begin() + static_cast<long>(count), 1.0);
  lp.AddConstraint(ones, ConstraintSense::kEqual, 1.0);
  LpResult res = lp.Solve();
  if (res.status != LpStatus::kOptimal) {
    throw ConvergenceError("function-distribution LP ended " +
                               LpStatusName(res.status),
                           res.x, std::numeric_limits<double>::quiet_NaN());
  }
  std::vector<double> w(res.x.begin(), res.x.begin() + static_cast<long>(count));
  FunctionPairDistribution fitted =
      FunctionPairDistribution::FromWeights(n1, n2, w, options.cap);
  double fitted_l1 = l1_gap(InducedChain(fitted), nullptr);
  if (fitted_l1 <= l1) {
    return {std::move(fitted), std::move(target), fitted_l1, false};
  }
  return {std::move(pb), std::move(target), l1, false};
}

FunctionPairDistribution EmpiricalFunctionDistribution(
    std::span<const JointDistribution> strategies,
    const FunctionDistributionOptions& options) {
  return FitEmpiricalFunctionDistribution(strategies, options).pi;
}

// -------------------------------------------- Constrained stationarity

namespace {

// One LP attempt; `relaxed` turns each stationarity equality into a pair of
// inequalities with the configured tolerance.
LpResult StationaryLp(const TransitionMatrix& m,
                      const std::vector<LinearInequality>& constraints,
                      const ConstrainedStationaryOptions& options,
                      bool relaxed) {
  const std::size_t dim = m.dim();
  LinearProgram lp(dim);
  if (options.objective) {
    std::vector<double> c(dim);
    for (std::size_t i = 0; i < dim; ++i) c[i] = -(*options.objective)[i];
    lp.SetObjective(c);
  }
  lp.AddConstraint(std::vector<double>(dim, 1.0), ConstraintSense::kEqual, 1.0);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> row(dim);
    for (std::size_t i = 0; i < dim; ++i) row[i] = m(i, j);
    row[j] -= 1.0;
    if (relaxed) {
      lp.AddConstraint(row, ConstraintSense::kLessEqual,
                       options.equality_tolerance);
      lp.AddConstraint(row, ConstraintSense::kGreaterEqual,
                       -options.equality_tolerance);
    } else {
      lp.AddConstraint(row, ConstraintSense::kEqual, 0.0);
    }
  }
  for (const auto& ineq : constraints) {
    lp.AddConstraint(ineq.coefficients, ConstraintSense::kGreaterEqual,
                     ineq.bound);
  }
  return lp.Solve();
}

}  // namespace

std::optional<JointDistribution> SolveConstrainedStationary(
    const TransitionMatrix& m, const std::vector<LinearInequality>& constraints,
    const ConstrainedStationaryOptions& options) {
  const std::size_t dim = m.dim();
  if (options.objective && options.objective->size() != dim) {
    throw DimensionError("stationary LP objective", dim,
                         options.objective->size());
  }
  for (const auto& ineq : constraints) {
    if (ineq.coefficients.size() != dim) {
      throw DimensionError("stationary LP inequality", dim,
                           ineq.coefficients.size());
    }
  }
  // Exact equalities first: their vertices are exact stationary points. The
  // relaxed system only matters when rounding empties the exact one.
  LpResult res = StationaryLp(m, constraints, options, /*relaxed=*/false);
  if (res.status == LpStatus::kInfeasible) {
    res = StationaryLp(m, constraints, options, /*relaxed=*/true);
  }
  if (res.status == LpStatus::kInfeasible) return std::nullopt;
  if (res.status != LpStatus::kOptimal) {
    throw ConvergenceError("stationary LP ended " + LpStatusName(res.status),
                           res.x, std::numeric_limits<double>::quiet_NaN());
  }
  JointDistribution sigma = JointDistribution::FromWeights(m.n1(), m.n2(), res.x);
  // A returned point far outside the requested tolerances means the pivots
  // were ill-conditioned.
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double v = -sigma[j];
    for (std::size_t i = 0; i < dim; ++i) v += sigma[i] * m(i, j);
    worst = std::max(worst, std::abs(v) - options.equality_tolerance);
  }
  for (const auto& ineq : constraints) {
    double v = 0.0;
    for (std::size_t i = 0; i < dim; ++i) v += ineq.coefficients[i] * sigma[i];
    worst = std::max(worst, ineq.bound - v);
  }
  if (worst > 1e-7) {
    throw ConvergenceError("stationary LP solution violates its constraints "
                           "(ill-conditioned pivots)",
                           sigma.probs(), worst);
  }
  return sigma;
}

}  // namespace policy_dyn
