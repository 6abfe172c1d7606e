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


#ifndef POLICY_DYN_MARKOV_H_
#define POLICY_DYN_MARKOV_H_

// Markov chains over the joint action set A = A1 x A2: chains estimated from
// play, chains induced by distributions over response-function pairs,
// deviation chains and constrained stationary distributions.
//
// Response functions: F1 holds every map A2 -> A1 and F2 every map A1 -> A2.
// A function f in F1 is encoded as the base-n1 numeral f(0) f(1) ... f(n2-1)
// with f(0) the most significant digit; g in F2 likewise in base n2. The pair
// (f, g) has index f_index * |F2| + g_index. The pair moves state (a1, b1) to
// (f(b1), g(a1)).

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "policy_dyn/game.h"
#include "policy_dyn/regret.h"

namespace policy_dyn {

inline constexpr std::size_t kDefaultFunctionPairCap = 1000000;
inline constexpr double kRowSumTolerance = 1e-10;

class TransitionMatrix {
 public:
  // Validates rows (entries >= 0, sums within kRowSumTolerance) and
  // renormalizes them.
  static TransitionMatrix FromMatrix(std::size_t n1, std::size_t n2, Matrix m,
                                     std::vector<std::size_t> dead_states = {});

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t dim() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  std::span<const double> row(std::size_t i) const { return m_.row(i); }
  const Matrix& matrix() const { return m_; }
  // States with zero visit weight whose row was substituted.
  const std::vector<std::size_t>& dead_states() const { return dead_; }

  friend bool operator==(const TransitionMatrix&,
                         const TransitionMatrix&) = default;

 private:
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  Matrix m_;
  std::vector<std::size_t> dead_;
};

// Number of function pairs n1^n2 * n2^n1; CapacityError beyond `cap`.
std::size_t FunctionPairCount(std::size_t n1, std::size_t n2,
                              std::size_t cap = kDefaultFunctionPairCap);

struct FunctionPair {
  std::size_t index = 0;
  std::vector<std::size_t> f;  // f[b] in A1 for every b in A2
  std::vector<std::size_t> g;  // g[a] in A2 for every a in A1
};

std::vector<std::size_t> DecodeF(std::size_t f_index, std::size_t n1,
                                 std::size_t n2);
std::vector<std::size_t> DecodeG(std::size_t g_index, std::size_t n1,
                                 std::size_t n2);
std::size_t EncodeF(std::span<const std::size_t> f, std::size_t n1);
std::size_t EncodeG(std::span<const std::size_t> g, std::size_t n2);

// Every pair in canonical index order.
std::vector<FunctionPair> EnumerateFunctionPairs(
    std::size_t n1, std::size_t n2, std::size_t cap = kDefaultFunctionPairCap);
void ForEachFunctionPair(std::size_t n1, std::size_t n2,
                         const std::function<void(const FunctionPair&)>& fn,
                         std::size_t cap = kDefaultFunctionPairCap);

class FunctionPairDistribution {
 public:
  static FunctionPairDistribution FromProbs(
      std::size_t n1, std::size_t n2, std::vector<double> probs,
      std::size_t cap = kDefaultFunctionPairCap);
  static FunctionPairDistribution FromWeights(
      std::size_t n1, std::size_t n2, std::span<const double> weights,
      std::size_t cap = kDefaultFunctionPairCap);
  static FunctionPairDistribution Dirac(std::size_t n1, std::size_t n2,
                                        std::size_t f_index,
                                        std::size_t g_index);
  static FunctionPairDistribution Uniform(std::size_t n1, std::size_t n2);

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t num_f() const { return num_f_; }
  std::size_t num_g() const { return num_g_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  const std::vector<double>& probs() const { return probs_; }

  // Marginals over F1 and F2.
  std::vector<double> MarginalF() const;
  std::vector<double> MarginalG() const;

  friend bool operator==(const FunctionPairDistribution&,
                         const FunctionPairDistribution&) = default;

 private:
  FunctionPairDistribution(std::size_t n1, std::size_t n2, std::size_t nf,
                           std::size_t ng, std::vector<double> probs)
      : n1_(n1), n2_(n2), num_f_(nf), num_g_(ng), probs_(std::move(probs)) {}
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  std::size_t num_f_ = 0;
  std::size_t num_g_ = 0;
  std::vector<double> probs_;
};

// Index of the constant function mapping everything to `action`.
std::size_t ConstantFunctionIndex(Player player, std::size_t action,
                                  std::size_t n1, std::size_t n2);

// What a zero-weight state's row becomes.
enum class DeadStateRule {
  kSelfLoop,       // Dirac at the state itself
  kEmpiricalMean,  // the averaged strategy sigma-hat
};

struct EmpiricalChainOptions {
  // Use p_{t-1}(x_i) p_t(x_j) instead of same-round products.
  bool lagged = false;
  DeadStateRule dead_rule = DeadStateRule::kSelfLoop;
};

// Streaming accumulator for the strategy-level empirical chain.
class EmpiricalChainAccumulator {
 public:
  EmpiricalChainAccumulator(std::size_t n1, std::size_t n2,
                            EmpiricalChainOptions options = {});
  void Add(const JointDistribution& p);
  std::size_t rounds() const { return rounds_; }
  // (1/T) sum_t p_t.
  JointDistribution Mean() const;
  TransitionMatrix Chain() const;

 private:
  std::size_t n1_;
  std::size_t n2_;
  EmpiricalChainOptions options_;
  std::size_t rounds_ = 0;
  std::vector<double> pair_sum_;   // |A| x |A|
  std::vector<double> visit_sum_;  // |A|
  std::vector<double> mean_sum_;   // |A|
  std::vector<double> previous_;
};

TransitionMatrix EmpiricalChain(std::span<const JointDistribution> strategies,
                                EmpiricalChainOptions options = {});

// Streaming accumulator for the count-based chain over realized joint
// actions.
class ObservedChainAccumulator {
 public:
  ObservedChainAccumulator(std::size_t n1, std::size_t n2);
  void Add(std::size_t joint_action);
  std::size_t rounds() const { return rounds_; }
  // Realized empirical distribution (1/T) sum_t delta_{x_t}.
  JointDistribution Mean() const;
  TransitionMatrix Chain() const;

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::size_t rounds_ = 0;
  std::size_t previous_ = 0;
  std::vector<double> counts_;  // |A| x |A|
  std::vector<double> visits_;  // |A|
};

// Throws ValidationError when T < 2.
TransitionMatrix ObservedChain(const PlayHistory& history);

TransitionMatrix InducedChain(const FunctionPairDistribution& pi);

struct DeviationChainResult {
  FunctionPairDistribution pi;
  TransitionMatrix chain;
};

// pi_a = delta_{constant a} x (marginal of pi over the other player's
// functions) and its induced chain.
DeviationChainResult DeviationChain(const FunctionPairDistribution& pi,
                                    Player player, std::size_t action);

// Constructive stationary distribution of the deviation chain: for player 1
// deviating to a, sigma(a, b) = P_pi(g(a) = b) and zero elsewhere. Throws
// InvariantError when its residual exceeds 1e-10.
JointDistribution DeviationStationary(const FunctionPairDistribution& pi,
                                      Player player, std::size_t action);

struct FunctionDistributionOptions {
  bool lagged = false;
  DeadStateRule dead_rule = DeadStateRule::kEmpiricalMean;
  std::size_t cap = kDefaultFunctionPairCap;
  // Largest LP (variables) attempted when no product-form realizer exists.
  std::size_t lp_variable_cap = 20000;
  double exact_tolerance = 1e-12;
};

struct FunctionDistributionFit {
  FunctionPairDistribution pi;
  // Target chain (empirical chain with dead rows imputed).
  TransitionMatrix target;
  // sum_{ij} |induced(pi)_ij - target_ij|.
  double l1_error = 0.0;
  // True when the product-of-kernels form reproduced the target.
  bool product_form = false;
};

// Distribution over function pairs whose induced chain is as close as
// possible to the empirical chain of `strategies`. The product of
// per-input kernels is used when it reproduces the chain exactly; otherwise
// an LP minimizes the entrywise L1 gap.
FunctionDistributionFit FitEmpiricalFunctionDistribution(
    std::span<const JointDistribution> strategies,
    const FunctionDistributionOptions& options = {});

FunctionPairDistribution EmpiricalFunctionDistribution(
    std::span<const JointDistribution> strategies,
    const FunctionDistributionOptions& options = {});

// ||sigma^T M - sigma||_1.
double StationaryResidual(const TransitionMatrix& m,
                          const JointDistribution& sigma);

// c . sigma >= r.
struct LinearInequality {
  std::vector<double> coefficients;
  double bound = 0.0;
};

struct ConstrainedStationaryOptions {
  double equality_tolerance = 1e-9;
  // When set, the LP maximizes objective . sigma among feasible points.
  std::optional<std::vector<double>> objective;
};

// Finds sigma >= 0 with sum 1, |sigma^T M - sigma| <= tol coordinatewise and
// every inequality; nullopt when infeasible.
std::optional<JointDistribution> SolveConstrainedStationary(
    const TransitionMatrix& m, const std::vector<LinearInequality>& constraints,
    const ConstrainedStationaryOptions& options = {});

}  // namespace policy_dyn

#endif  // POLICY_DYN_MARKOV_H_
