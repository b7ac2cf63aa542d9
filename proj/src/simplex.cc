// Copyright 2026 The motifcc Authors.
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

#include "motifcc/simplex.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "motifcc/errors.h"

namespace motifcc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Entries of the entering column below this are treated as zero.
constexpr double kZeroTolerance = 1e-11;
// Pivots smaller than this force a refactorization right after the update.
constexpr double kSmallPivot = 1e-7;
constexpr double kDropTolerance = 1e-14;
constexpr double kPerturbation = 1e-5;
constexpr int kMaxBasisResets = 5;
// Refactor once the eta file holds this many nonzeros per row; dense etas
// make long files slower than a fresh kernel factorization.
constexpr std::size_t kEtaFillFactor = 8;

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Product-form update: the basis after a pivot at `position` is B E, with E
// the identity whose column `position` is the entering column in basis
// coordinates. `index`/`value` hold its off-pivot nonzeros.
struct Eta {
  int position = 0;
  double pivot = 1.0;
  std::vector<int> index;
  std::vector<double> value;
};

struct RatioResult {
  enum class Kind { kPivot, kFlip, kUnbounded } kind = Kind::kUnbounded;
  double step = 0.0;
  int position = -1;
  double target = 0.0;  // value the leaving variable settles at
};

// Structural variables are columns 0..n-1. Row i has a logical column n+i
// equal to -e_i, so every row reads a_i x - r_i = 0 with the row bounds moved
// onto r_i. Only the block of the basis formed by basic structurals and rows
// with nonbasic logicals (the kernel) needs a real factorization.
class BoundedSimplex {
 public:
  BoundedSimplex(const LpProblem& problem, const SolverConfig& config)
      : config_(config),
        n_(problem.num_variables()),
        m_(static_cast<int>(problem.num_constraints())) {
    const auto total = static_cast<std::size_t>(n_ + m_);
    cost_.assign(total, 0.0);
    lower_.assign(total, 0.0);
    upper_.assign(total, 0.0);

    std::vector<std::vector<std::pair<int, double>>> columns(static_cast<std::size_t>(n_));
    for (int i = 0; i < m_; ++i) {
      const auto& row = problem.constraints()[static_cast<std::size_t>(i)];
      for (const auto& t : row.terms) {
        if (t.coeff != 0.0) columns[static_cast<std::size_t>(t.var)].emplace_back(i, t.coeff);
      }
      double lo = -kInf;
      double hi = kInf;
      switch (row.sense) {
        case Sense::kLessEqual: hi = row.rhs; break;
        case Sense::kGreaterEqual: lo = row.rhs; break;
        case Sense::kEqual: lo = hi = row.rhs; break;
      }
      lower_[static_cast<std::size_t>(n_ + i)] = lo;
      upper_[static_cast<std::size_t>(n_ + i)] = hi;
    }
    col_start_.reserve(static_cast<std::size_t>(n_) + 1);
    col_start_.push_back(0);
    for (int j = 0; j < n_; ++j) {
      const auto& v = problem.variable(j);
      cost_[static_cast<std::size_t>(j)] = v.cost;
      lower_[static_cast<std::size_t>(j)] = v.lower;
      upper_[static_cast<std::size_t>(j)] = v.upper;
      for (const auto& [i, a] : columns[static_cast<std::size_t>(j)]) {
        row_index_.push_back(i);
        col_value_.push_back(a);
      }
      col_start_.push_back(static_cast<int>(row_index_.size()));
    }
    original_lower_ = lower_;
    original_upper_ = upper_;
    row_scratch_.assign(static_cast<std::size_t>(m_), 0.0);
    rejected_.assign(total, 0);
  }

  SolverResult run() {
    const auto start = std::chrono::steady_clock::now();
    SolverResult result;
    if (config_.perturb) perturb_bounds();
    slack_basis();
    if (!refactor()) throw SolverError("slack basis failed to factor");

    bool bland = config_.pricing == PricingRule::kBland;
    int stalled = 0;
    int resets = 0;
    std::vector<double> basic_cost(static_cast<std::size_t>(m_));
    std::vector<double> y;
    std::vector<double> alpha;
    std::vector<double> column(static_cast<std::size_t>(m_));

    SolveStatus status = SolveStatus::kIterationLimit;
    while (true) {
      if (iterations_ >= config_.max_iterations) break;
      if (force_refactor_ || static_cast<int>(etas_.size()) >= config_.refactor_interval ||
          eta_nnz_ > kEtaFillFactor * static_cast<std::size_t>(m_)) {
        if (!refactor()) {
          if (config_.log_interval > 0) {
            std::fprintf(stderr, "simplex it=%lld singular basis, restarting from slacks\n",
                         static_cast<long long>(iterations_));
          }
          if (++resets > kMaxBasisResets) throw SolverError("basis repeatedly singular");
          slack_basis();
          if (!refactor()) throw SolverError("slack basis failed to factor");
        }
      }

      const bool phase_one = phase_costs(basic_cost);
      btran(basic_cost, y);

      double reduced = 0.0;
      int direction = 0;
      const int entering = price(y, phase_one, bland, reduced, direction);
      if (entering < 0 && rejected_count_ > 0) {
        // Retry the rejected candidates on a fresh factorization, taking
        // whatever pivot they offer.
        clear_rejected();
        accept_small_pivot_ = true;
        force_refactor_ = true;
        continue;
      }
      if (entering < 0) {
        if (phase_one) {
          status = SolveStatus::kInfeasible;
          break;
        }
        if (perturbed_) {
          remove_perturbation();
          continue;
        }
        status = SolveStatus::kOptimal;
        break;
      }

      load_column(entering, column);
      ftran(column, alpha);
      const RatioResult ratio =
          bland ? ratio_test_textbook(alpha, entering, direction, phase_one)
                : ratio_test_harris(alpha, entering, direction, phase_one);
      if (ratio.kind == RatioResult::Kind::kUnbounded) {
        status = SolveStatus::kUnbounded;
        break;
      }
      if (ratio.kind == RatioResult::Kind::kPivot && !accept_small_pivot_ &&
          std::abs(alpha[at(ratio.position)]) < kSmallPivot) {
        rejected_[at(entering)] = 1;
        ++rejected_count_;
        continue;
      }
      accept_small_pivot_ = false;
      if (rejected_count_ > 0) clear_rejected();
      apply_step(alpha, entering, direction, ratio);
      ++iterations_;

      const double progress = ratio.step * std::abs(reduced);
      if (progress <= 1e-12) {
        if (++stalled >= config_.stall_limit) bland = true;
      } else {
        stalled = 0;
        bland = config_.pricing == PricingRule::kBland;
      }
      if (config_.log_interval > 0 && iterations_ % config_.log_interval == 0) {
        std::fprintf(stderr, "simplex it=%lld phase=%d obj=%.10g kernel=%zu etas=%zu%s\n",
                     static_cast<long long>(iterations_), phase_one ? 1 : 2, current_objective(),
                     kernel_vars_.size(), etas_.size(), bland ? " bland" : "");
      }
    }

    result.status = status;
    result.iterations = iterations_;
    result.solution.status = status;
    result.solution.values.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      // Harris steps leave bound overshoots below the feasibility tolerance.
      auto& v = result.solution.values[static_cast<std::size_t>(j)];
      const double lo = original_lower_[static_cast<std::size_t>(j)];
      const double hi = original_upper_[static_cast<std::size_t>(j)];
      if (v < lo && v >= lo - config_.feasibility_tolerance) v = lo;
      if (v > hi && v <= hi + config_.feasibility_tolerance) v = hi;
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }

 private:
  std::size_t at(int j) const { return static_cast<std::size_t>(j); }

  double current_objective() const {
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) sum += cost_[at(j)] * x_[at(j)];
    return sum;
  }

  void clear_rejected() {
    std::fill(rejected_.begin(), rejected_.end(), 0);
    rejected_count_ = 0;
  }

  void perturb_bounds() {
    std::mt19937_64 rng(config_.seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    // Rows only: shifting structural bounds would leave the slack basis
    // infeasible.
    for (int j = n_; j < n_ + m_; ++j) {
      double& lo = lower_[at(j)];
      double& hi = upper_[at(j)];
      if (lo == hi) continue;
      const double shift_lo = kPerturbation * (0.5 + 0.5 * unit());
      const double shift_hi = kPerturbation * (0.5 + 0.5 * unit());
      if (std::isfinite(lo)) lo -= shift_lo * (1.0 + std::abs(lo));
      if (std::isfinite(hi)) hi += shift_hi * (1.0 + std::abs(hi));
    }
    perturbed_ = true;
  }

  void remove_perturbation() {
    lower_ = original_lower_;
    upper_ = original_upper_;
    perturbed_ = false;
    shifting_ = false;
    for (int j = 0; j < n_ + m_; ++j) {
      if (state_[at(j)] == VarState::kAtLower) x_[at(j)] = lower_[at(j)];
      if (state_[at(j)] == VarState::kAtUpper) x_[at(j)] = upper_[at(j)];
    }
    if (!refactor()) {
      slack_basis();
      if (!refactor()) throw SolverError("slack basis failed to factor");
    }
  }

  // Every logical basic; structurals at their lower bound when finite.
  void slack_basis() {
    const auto total = static_cast<std::size_t>(n_ + m_);
    x_.resize(total, 0.0);
    state_.assign(total, VarState::kAtLower);
    position_.assign(total, -1);
    basis_.resize(static_cast<std::size_t>(m_));
    for (int j = 0; j < n_; ++j) {
      const double lo = lower_[at(j)];
      const double hi = upper_[at(j)];
      const double current = x_[at(j)];
      if (std::isfinite(lo) && std::isfinite(hi)) {
        const bool upper_closer = std::abs(hi - current) < std::abs(current - lo);
        state_[at(j)] = upper_closer ? VarState::kAtUpper : VarState::kAtLower;
        x_[at(j)] = upper_closer ? hi : lo;
      } else if (std::isfinite(lo)) {
        x_[at(j)] = lo;
      } else if (std::isfinite(hi)) {
        state_[at(j)] = VarState::kAtUpper;
        x_[at(j)] = hi;
      } else {
        state_[at(j)] = VarState::kFree;
        x_[at(j)] = 0.0;
      }
    }
    for (int i = 0; i < m_; ++i) {
      basis_[at(i)] = n_ + i;
      position_[at(n_ + i)] = i;
      state_[at(n_ + i)] = VarState::kBasic;
    }
  }

  // Factors the kernel of the current basis and recomputes basic values.
  bool refactor() {
    etas_.clear();
    eta_nnz_ = 0;
    force_refactor_ = false;
    kernel_vars_.clear();
    kernel_pos_.clear();
    kernel_rows_.clear();
    kernel_row_of_.assign(static_cast<std::size_t>(m_), -1);
    logical_row_of_pos_.assign(static_cast<std::size_t>(m_), -1);
    for (int p = 0; p < m_; ++p) {
      const int j = basis_[at(p)];
      if (j < n_) {
        kernel_vars_.push_back(j);
        kernel_pos_.push_back(p);
      } else {
        logical_row_of_pos_[at(p)] = j - n_;
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (state_[at(n_ + i)] != VarState::kBasic) {
        kernel_row_of_[at(i)] = static_cast<int>(kernel_rows_.size());
        kernel_rows_.push_back(i);
      }
    }
    if (kernel_rows_.size() != kernel_vars_.size()) {
      throw SolverError("basis bookkeeping out of sync");
    }
    const auto r = static_cast<Eigen::Index>(kernel_vars_.size());
    if (r > 0) {
      std::vector<Eigen::Triplet<double>> triplets;
      for (Eigen::Index c = 0; c < r; ++c) {
        const int j = kernel_vars_[static_cast<std::size_t>(c)];
        for (int e = col_start_[at(j)]; e < col_start_[at(j + 1)]; ++e) {
          const int kr = kernel_row_of_[at(row_index_[at(e)])];
          if (kr >= 0) triplets.emplace_back(kr, c, col_value_[at(e)]);
        }
      }
      kernel_.resize(r, r);
      kernel_.setFromTriplets(triplets.begin(), triplets.end());
      kernel_.makeCompressed();
      lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<double>,
                                             Eigen::COLAMDOrdering<int>>>();
      lu_->analyzePattern(kernel_);
      lu_->factorize(kernel_);
      if (lu_->info() != Eigen::Success) return false;
    }
    recompute_basic_values();
    return true;
  }

  void recompute_basic_values() {
    std::vector<double> rhs(static_cast<std::size_t>(m_), 0.0);
    for (int j = 0; j < n_; ++j) {
      if (state_[at(j)] == VarState::kBasic || x_[at(j)] == 0.0) continue;
      for (int e = col_start_[at(j)]; e < col_start_[at(j + 1)]; ++e) {
        rhs[at(row_index_[at(e)])] -= col_value_[at(e)] * x_[at(j)];
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (state_[at(n_ + i)] != VarState::kBasic) rhs[at(i)] += x_[at(n_ + i)];
    }
    std::vector<double> basic;
    ftran(rhs, basic);
    for (int p = 0; p < m_; ++p) x_[at(basis_[at(p)])] = basic[at(p)];
  }

  void load_column(int j, std::vector<double>& column) const {
    std::fill(column.begin(), column.end(), 0.0);
    if (j < n_) {
      for (int e = col_start_[at(j)]; e < col_start_[at(j + 1)]; ++e) {
        column[at(row_index_[at(e)])] = col_value_[at(e)];
      }
    } else {
      column[at(j - n_)] = -1.0;
    }
  }

  // Solves B d = rhs; rhs is indexed by row, d by basis position.
  void ftran(const std::vector<double>& rhs, std::vector<double>& d) {
    d.assign(static_cast<std::size_t>(m_), 0.0);
    const auto r = static_cast<Eigen::Index>(kernel_vars_.size());
    Eigen::VectorXd kernel_solution;
    if (r > 0) {
      Eigen::VectorXd b(r);
      for (Eigen::Index k = 0; k < r; ++k) b[k] = rhs[at(kernel_rows_[static_cast<std::size_t>(k)])];
      kernel_solution = lu_->solve(b);
    }
    std::fill(row_scratch_.begin(), row_scratch_.end(), 0.0);
    for (Eigen::Index c = 0; c < r; ++c) {
      const double v = kernel_solution[c];
      d[at(kernel_pos_[static_cast<std::size_t>(c)])] = v;
      if (v == 0.0) continue;
      const int j = kernel_vars_[static_cast<std::size_t>(c)];
      for (int e = col_start_[at(j)]; e < col_start_[at(j + 1)]; ++e) {
        row_scratch_[at(row_index_[at(e)])] += col_value_[at(e)] * v;
      }
    }
    for (int p = 0; p < m_; ++p) {
      const int i = logical_row_of_pos_[at(p)];
      if (i >= 0) d[at(p)] = row_scratch_[at(i)] - rhs[at(i)];
    }
    for (const Eta& eta : etas_) {
      double& dp = d[at(eta.position)];
      if (dp == 0.0) continue;
      dp /= eta.pivot;
      for (std::size_t e = 0; e < eta.index.size(); ++e) d[at(eta.index[e])] -= eta.value[e] * dp;
    }
  }

  // Solves y^T B = c^T; c is indexed by basis position, y by row.
  void btran(const std::vector<double>& c_in, std::vector<double>& y) {
    std::vector<double> c = c_in;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double sum = c[at(it->position)];
      for (std::size_t e = 0; e < it->index.size(); ++e) sum -= c[at(it->index[e])] * it->value[e];
      c[at(it->position)] = sum / it->pivot;
    }
    y.assign(static_cast<std::size_t>(m_), 0.0);
    for (int p = 0; p < m_; ++p) {
      const int i = logical_row_of_pos_[at(p)];
      if (i >= 0) y[at(i)] = -c[at(p)];
    }
    const auto r = static_cast<Eigen::Index>(kernel_vars_.size());
    if (r == 0) return;
    Eigen::VectorXd b(r);
    for (Eigen::Index k = 0; k < r; ++k) {
      const int j = kernel_vars_[static_cast<std::size_t>(k)];
      double v = c[at(kernel_pos_[static_cast<std::size_t>(k)])];
      for (int e = col_start_[at(j)]; e < col_start_[at(j + 1)]; ++e) {
        v -= y[at(row_index_[at(e)])] * col_value_[at(e)];
      }
      b[k] = v;
    }
    const Eigen::VectorXd yk = lu_->transpose().solve(b);
    for (Eigen::Index k = 0; k < r; ++k) y[at(kernel_rows_[static_cast<std::size_t>(k)])] = yk[k];
  }

  // Fills the basic cost vector; returns true while some basic variable is
  // infeasible (phase one: minimize the sum of infeasibilities).
  bool phase_costs(std::vector<double>& basic_cost) const {
    const double tol = config_.feasibility_tolerance;
    bool infeasible = false;
    for (int p = 0; p < m_; ++p) {
      const int j = basis_[at(p)];
      const double v = x_[at(j)];
      if (v < lower_[at(j)] - tol) {
        basic_cost[at(p)] = -1.0;
        infeasible = true;
      } else if (v > upper_[at(j)] + tol) {
        basic_cost[at(p)] = 1.0;
        infeasible = true;
      } else {
        basic_cost[at(p)] = 0.0;
      }
    }
    if (!infeasible) {
      for (int p = 0; p < m_; ++p) basic_cost[at(p)] = cost_[at(basis_[at(p)])];
    }
    return infeasible;
  }

  double reduced_cost(int j, const std::vector<double>& y, bool phase_one) const {
    if (j >= n_) return y[at(j - n_)];  // logical column is -e_i, cost 0
    double d = phase_one ? 0.0 : cost_[at(j)];
    for (int e = col_start_[at(j)]; e < col_start_[at(j + 1)]; ++e) {
      d -= y[at(row_index_[at(e)])] * col_value_[at(e)];
    }
    return d;
  }

  int price(const std::vector<double>& y, bool phase_one, bool bland, double& reduced,
            int& direction) const {
    const double tol = config_.optimality_tolerance;
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const VarState s = state_[at(j)];
      if (s == VarState::kBasic || lower_[at(j)] == upper_[at(j)] || rejected_[at(j)]) continue;
      const double d = reduced_cost(j, y, phase_one);
      int dir = 0;
      if (s == VarState::kAtLower && d < -tol) dir = 1;
      else if (s == VarState::kAtUpper && d > tol) dir = -1;
      else if (s == VarState::kFree && std::abs(d) > tol) dir = d < 0 ? 1 : -1;
      if (dir == 0) continue;
      if (bland) {
        reduced = d;
        direction = dir;
        return j;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        best = j;
        reduced = d;
        direction = dir;
      }
    }
    return best;
  }

  // Bounds a basic variable may move toward, honoring phase-one targets: an
  // infeasible variable moving toward feasibility stops at its violated bound.
  void movement_bounds(int j, bool phase_one, double& lo, double& hi) const {
    lo = lower_[at(j)];
    hi = upper_[at(j)];
    if (!phase_one) return;
    const double v = x_[at(j)];
    const double tol = config_.feasibility_tolerance;
    if (v < lo - tol) {
      hi = lo;
      lo = -kInf;
    } else if (v > hi + tol) {
      lo = hi;
      hi = kInf;
    }
  }

  RatioResult ratio_test_harris(const std::vector<double>& alpha, int entering, int dir,
                                bool phase_one) const {
    const double relax = 0.5 * config_.feasibility_tolerance;
    double bound = kInf;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[at(p)];
      if (std::abs(a) < kZeroTolerance) continue;
      const int j = basis_[at(p)];
      const double rate = -dir * a;
      double lo, hi;
      movement_bounds(j, phase_one, lo, hi);
      const double v = x_[at(j)];
      if (rate < 0 && std::isfinite(lo)) bound = std::min(bound, std::max(0.0, (v - lo + relax) / -rate));
      if (rate > 0 && std::isfinite(hi)) bound = std::min(bound, std::max(0.0, (hi - v + relax) / rate));
    }
    RatioResult out;
    const double flip = upper_[at(entering)] - lower_[at(entering)];
    if (!std::isfinite(bound) && !std::isfinite(flip)) return out;
    if (flip <= bound) {
      out.kind = RatioResult::Kind::kFlip;
      out.step = flip;
      return out;
    }
    double best_pivot = 0.0;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[at(p)];
      if (std::abs(a) < kZeroTolerance) continue;
      const int j = basis_[at(p)];
      const double rate = -dir * a;
      double lo, hi;
      movement_bounds(j, phase_one, lo, hi);
      const double v = x_[at(j)];
      double t = kInf;
      double target = 0.0;
      if (rate < 0 && std::isfinite(lo)) {
        t = std::max(0.0, (v - lo) / -rate);
        target = lo;
      } else if (rate > 0 && std::isfinite(hi)) {
        t = std::max(0.0, (hi - v) / rate);
        target = hi;
      }
      if (t > bound) continue;
      const bool better = std::abs(a) > best_pivot ||
                          (std::abs(a) == best_pivot && out.position >= 0 &&
                           j < basis_[at(out.position)]);
      if (better) {
        best_pivot = std::abs(a);
        out.kind = RatioResult::Kind::kPivot;
        out.step = t;
        out.position = p;
        out.target = target;
      }
    }
    if (out.position < 0) {
      // Only reachable when every candidate hides behind the relaxation.
      out.kind = RatioResult::Kind::kFlip;
      out.step = flip;
      if (!std::isfinite(flip)) out.kind = RatioResult::Kind::kUnbounded;
    }
    return out;
  }

  RatioResult ratio_test_textbook(const std::vector<double>& alpha, int entering, int dir,
                                  bool phase_one) const {
    RatioResult out;
    double best = kInf;
    for (int p = 0; p < m_; ++p) {
      const double a = alpha[at(p)];
      if (std::abs(a) < kZeroTolerance) continue;
      const int j = basis_[at(p)];
      const double rate = -dir * a;
      double lo, hi;
      movement_bounds(j, phase_one, lo, hi);
      const double v = x_[at(j)];
      double t = kInf;
      double target = 0.0;
      if (rate < 0 && std::isfinite(lo)) {
        t = std::max(0.0, (v - lo) / -rate);
        target = lo;
      } else if (rate > 0 && std::isfinite(hi)) {
        t = std::max(0.0, (hi - v) / rate);
        target = hi;
      }
      if (!std::isfinite(t)) continue;
      // Ties go to the lowest variable index.
      if (t < best || (t == best && j < basis_[at(out.position)])) {
        best = t;
        out.kind = RatioResult::Kind::kPivot;
        out.step = t;
        out.position = p;
        out.target = target;
      }
    }
    const double flip = upper_[at(entering)] - lower_[at(entering)];
    if (flip <= best) {
      out.kind = std::isfinite(flip) ? RatioResult::Kind::kFlip : RatioResult::Kind::kUnbounded;
      out.step = flip;
      out.position = -1;
    }
    return out;
  }

  void apply_step(const std::vector<double>& alpha, int entering, int dir,
                  const RatioResult& ratio) {
    const double t = ratio.step;
    if (t != 0.0) {
      for (int p = 0; p < m_; ++p) {
        const double a = alpha[at(p)];
        if (a != 0.0) x_[at(basis_[at(p)])] -= dir * a * t;
      }
    }
    if (ratio.kind == RatioResult::Kind::kFlip) {
      state_[at(entering)] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      x_[at(entering)] = dir > 0 ? upper_[at(entering)] : lower_[at(entering)];
      return;
    }
    x_[at(entering)] += dir * t;
    const int r = ratio.position;
    const int leaving = basis_[at(r)];
    // A phase-one target is the violated bound, which may be the opposite
    // side from the direction of travel.
    const bool at_upper = ratio.target == upper_[at(leaving)];
    state_[at(leaving)] = at_upper ? VarState::kAtUpper : VarState::kAtLower;
    // Harris steps may carry the leaving variable slightly past its bound.
    // Snapping it back would shift every basic value; widening the bound to
    // where it stands keeps the iterate consistent until the shifts are
    // dropped together with the perturbation.
    const double actual = x_[at(leaving)];
    if (shifting_ && at_upper && actual > upper_[at(leaving)]) {
      upper_[at(leaving)] = actual;
      perturbed_ = true;
    } else if (shifting_ && !at_upper && actual < lower_[at(leaving)]) {
      lower_[at(leaving)] = actual;
      perturbed_ = true;
    } else {
      x_[at(leaving)] = ratio.target;
    }
    position_[at(leaving)] = -1;
    basis_[at(r)] = entering;
    position_[at(entering)] = r;
    state_[at(entering)] = VarState::kBasic;

    Eta eta;
    eta.position = r;
    eta.pivot = alpha[at(r)];
    for (int p = 0; p < m_; ++p) {
      if (p != r && std::abs(alpha[at(p)]) > kDropTolerance) {
        eta.index.push_back(p);
        eta.value.push_back(alpha[at(p)]);
      }
    }
    if (std::abs(eta.pivot) < kSmallPivot) force_refactor_ = true;
    eta_nnz_ += eta.index.size();
    etas_.push_back(std::move(eta));
  }

  const SolverConfig& config_;
  int n_;
  int m_;
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> col_value_;
  std::vector<double> cost_;
  std::vector<double> lower_, upper_;
  std::vector<double> original_lower_, original_upper_;
  bool perturbed_ = false;
  bool shifting_ = true;

  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> basis_;     // position -> variable
  std::vector<int> position_;  // variable -> position, -1 when nonbasic

  // Kernel of the last factored basis.
  std::vector<int> kernel_vars_;
  std::vector<int> kernel_pos_;
  std::vector<int> kernel_rows_;
  std::vector<int> kernel_row_of_;
  std::vector<int> logical_row_of_pos_;
  Eigen::SparseMatrix<double> kernel_;
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>> lu_;
  std::vector<Eta> etas_;
  std::vector<double> row_scratch_;
  std::int64_t iterations_ = 0;
  std::size_t eta_nnz_ = 0;
  bool force_refactor_ = false;
  // Entering candidates whose best pivot was too small, skipped until the
  // next basis change.
  std::vector<std::uint8_t> rejected_;
  std::size_t rejected_count_ = 0;
  bool accept_small_pivot_ = false;
};

}  // namespace

void SolverConfig::validate() const {
  if (!(feasibility_tolerance > 0.0) || !(optimality_tolerance > 0.0)) {
    throw InvalidParameterError("solver tolerances must be positive");
  }
  if (refactor_interval < 1) throw InvalidParameterError("refactor interval must be positive");
  if (max_iterations < 0) throw InvalidParameterError("iteration limit must be non-negative");
}

SolverResult SimplexSolver::solve(const LpProblem& problem, const SolverConfig& config) const {
  config.validate();
  BoundedSimplex simplex(problem, config);
  SolverResult result = simplex.run();
  result.solution.objective_value = problem.objective_at(result.solution.values);
  return result;
}

SolverResult solve(const LpProblem& problem, const SolverConfig& config) {
  return SimplexSolver().solve(problem, config);
}

ViolationReport verify_solution(const LpProblem& problem, std::span<const double> values,
                                double tolerance) {
  ViolationReport report;
  if (values.size() != static_cast<std::size_t>(problem.num_variables())) {
    throw InvalidParameterError("solution has " + std::to_string(values.size()) +
                                " values for " + std::to_string(problem.num_variables()) +
                                " variables");
  }
  for (int j = 0; j < problem.num_variables(); ++j) {
    const auto& var = problem.variable(j);
    const double v = values[static_cast<std::size_t>(j)];
    if (v < var.lower - tolerance) {
      report.violations.push_back({Violation::Kind::kLowerBound, static_cast<std::size_t>(j),
                                   var.lower - v,
                                   var.key.name() + " below its lower bound"});
    }
    if (v > var.upper + tolerance) {
      report.violations.push_back({Violation::Kind::kUpperBound, static_cast<std::size_t>(j),
                                   v - var.upper,
                                   var.key.name() + " above its upper bound"});
    }
  }
  for (std::size_t i = 0; i < problem.num_constraints(); ++i) {
    const auto& row = problem.constraints()[i];
    const double activity = row.activity(values);
    double excess = 0.0;
    switch (row.sense) {
      case Sense::kLessEqual: excess = activity - row.rhs; break;
      case Sense::kGreaterEqual: excess = row.rhs - activity; break;
      case Sense::kEqual: excess = std::abs(activity - row.rhs); break;
    }
    if (excess > tolerance) {
      std::ostringstream what;
      what << "c_" << i << ":";
      for (const auto& t : row.terms) what << ' ' << t.coeff << '*' << problem.variable(t.var).key.name();
      what << ' ' << to_string(row.sense) << ' ' << row.rhs << " (activity " << activity << ")";
      report.violations.push_back({Violation::Kind::kRow, i, excess, what.str()});
    }
  }
  return report;
}

}  // namespace motifcc
