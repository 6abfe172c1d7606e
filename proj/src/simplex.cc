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


#include "policy_dyn/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "policy_dyn/error.h"

namespace policy_dyn {
namespace {

// Tableau with m constraint rows plus one reduced-cost row; the last column
// holds the right-hand side (and minus the objective in the cost row).
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const {
    return data_[i * (cols_ + 1) + j];
  }
  double& rhs(std::size_t i) { return at(i, cols_); }
  std::size_t cost_row() const { return rows_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void Pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

enum class PhaseOutcome { kOptimal, kUnbounded };

// Runs Bland-rule simplex iterations on columns [0, usable_cols).
PhaseOutcome RunSimplex(Tableau& t, std::vector<std::size_t>& basis,
                        std::size_t usable_cols, const LpOptions& options,
                        int& iterations) {
  const std::size_t cost = t.cost_row();
  while (true) {
    if (iterations >= options.max_iterations) {
      throw ConvergenceError("simplex iteration cap reached", {},
                             static_cast<double>(iterations));
    }
    std::size_t enter = usable_cols;
    for (std::size_t j = 0; j < usable_cols; ++j) {
      if (t.at(cost, j) < -options.pivot_tolerance) {
        enter = j;
        break;
      }
    }
    if (enter == usable_cols) return PhaseOutcome::kOptimal;
    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= options.pivot_tolerance) continue;
      const double ratio = std::max(t.rhs(i), 0.0) / a;
      if (ratio < best - 1e-12 ||
          (std::abs(ratio - best) <= 1e-12 && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == t.rows()) return PhaseOutcome::kUnbounded;
    t.Pivot(leave, enter);
    basis[leave] = enter;
    ++iterations;
  }
}

}  // namespace

std::string LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(std::size_t num_vars)
    : num_vars_(num_vars), objective_(num_vars, 0.0) {}

void LinearProgram::SetObjective(std::vector<double> c) {
  if (c.size() != num_vars_) {
    throw DimensionError("LP objective", num_vars_, c.size());
  }
  objective_ = std::move(c);
}

void LinearProgram::AddConstraint(std::vector<double> coefficients,
                                  ConstraintSense sense, double rhs) {
  if (coefficients.size() != num_vars_) {
    throw DimensionError("LP constraint", num_vars_, coefficients.size());
  }
  for (double v : coefficients) {
    if (!std::isfinite(v)) throw ValidationError("non-finite LP coefficient");
  }
  if (!std::isfinite(rhs)) throw ValidationError("non-finite LP bound");
  rows_.push_back(Row{std::move(coefficients), sense, rhs});
}

LpResult LinearProgram::Solve(const LpOptions& options) const {
  const std::size_t m = rows_.size();
  const std::size_t n = num_vars_;

  // Normalize every row to a nonnegative right-hand side.
  std::vector<Row> rows = rows_;
  for (Row& r : rows) {
    if (r.b < 0.0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      if (r.sense == ConstraintSense::kLessEqual) {
        r.sense = ConstraintSense::kGreaterEqual;
      } else if (r.sense == ConstraintSense::kGreaterEqual) {
        r.sense = ConstraintSense::kLessEqual;
      }
    }
  }

  // Columns: originals, one slack/surplus per inequality, then artificials.
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (const Row& r : rows) {
    if (r.sense != ConstraintSense::kEqual) ++num_slack;
    if (r.sense != ConstraintSense::kLessEqual) ++num_art;
  }
  const std::size_t art_begin = n + num_slack;
  const std::size_t cols = art_begin + num_art;
  Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::size_t slack = n;
  std::size_t art = art_begin;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = rows[i].a[j];
    t.rhs(i) = rows[i].b;
    switch (rows[i].sense) {
      case ConstraintSense::kLessEqual:
        t.at(i, slack) = 1.0;
        basis[i] = slack++;
        break;
      case ConstraintSense::kGreaterEqual:
        t.at(i, slack++) = -1.0;
        t.at(i, art) = 1.0;
        basis[i] = art++;
        break;
      case ConstraintSense::kEqual:
        t.at(i, art) = 1.0;
        basis[i] = art++;
        break;
    }
  }

  LpResult result;
  int iterations = 0;
  const std::size_t cost = t.cost_row();

  // Phase one: minimize the sum of artificials.
  if (num_art > 0) {
    for (std::size_t j = art_begin; j < cols; ++j) t.at(cost, j) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      for (std::size_t j = 0; j <= cols; ++j) t.at(cost, j) -= t.at(i, j);
    }
    RunSimplex(t, basis, cols, options, iterations);
    const double infeasibility = -t.rhs(cost);
    if (infeasibility > options.feasibility_tolerance) {
      result.status = LpStatus::kInfeasible;
      result.iterations = iterations;
      return result;
    }
    // Drive remaining artificials out of the basis where possible; rows
    // where that fails are redundant and stay inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art_begin) continue;
      std::size_t best = art_begin;
      double best_abs = options.pivot_tolerance;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (std::abs(t.at(i, j)) > best_abs) {
          best_abs = std::abs(t.at(i, j));
          best = j;
        }
      }
      if (best < art_begin) {
        t.Pivot(i, best);
        basis[i] = best;
      }
    }
  }

  // Phase two: original objective over non-artificial columns.
  for (std::size_t j = 0; j <= cols; ++j) t.at(cost, j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.at(cost, j) = objective_[j];
  for (std::size_t i = 0; i < m; ++i) {
    const double cb = basis[i] < n ? objective_[basis[i]] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) t.at(cost, j) -= cb * t.at(i, j);
  }
  PhaseOutcome outcome = RunSimplex(t, basis, art_begin, options, iterations);
  result.iterations = iterations;
  if (outcome == PhaseOutcome::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] = std::max(t.rhs(i), 0.0);
  }
  result.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.objective += objective_[j] * result.x[j];
  return result;
}

}  // namespace policy_dyn
