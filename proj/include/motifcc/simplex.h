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

#ifndef MOTIFCC_SIMPLEX_H_
#define MOTIFCC_SIMPLEX_H_

// Bounded-variable revised primal simplex for LpProblem.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "motifcc/lp_model.h"

namespace motifcc {

enum class PricingRule {
  // Largest reduced cost, falling back to Bland's rule while stalled.
  kDantzig,
  // Lowest eligible index throughout.
  kBland,
};

struct SolverConfig {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-7;
  std::int64_t max_iterations = 50'000'000;
  PricingRule pricing = PricingRule::kDantzig;
  // Basis updates between refactorizations.
  int refactor_interval = 100;
  // Consecutive degenerate pivots before Bland's rule takes over.
  int stall_limit = 300;
  // Random outward bound shifts against degeneracy; removed before the final
  // cleanup pass.
  bool perturb = true;
  std::uint64_t seed = 0x6d6f746966ull;
  // Progress line on stderr every this many iterations; 0 is silent.
  std::int64_t log_interval = 0;

  // Throws InvalidParameterError on non-positive tolerances.
  void validate() const;
};

struct SolverResult {
  SolveStatus status = SolveStatus::kOptimal;
  // Filled for every status; meaningful as an optimum only when optimal.
  FractionalSolution solution;
  std::int64_t iterations = 0;
  double wall_seconds = 0.0;
};

// Seam for plugging in other LP solvers, e.g. for cross-validation.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual std::string name() const = 0;
  virtual SolverResult solve(const LpProblem& problem, const SolverConfig& config) const = 0;
};

class SimplexSolver : public LpSolver {
 public:
  std::string name() const override { return "bounded-simplex"; }
  SolverResult solve(const LpProblem& problem, const SolverConfig& config) const override;
};

SolverResult solve(const LpProblem& problem, const SolverConfig& config = {});

struct Violation {
  enum class Kind { kRow, kLowerBound, kUpperBound };
  Kind kind = Kind::kRow;
  // Row index for kRow, variable index otherwise.
  std::size_t index = 0;
  double amount = 0.0;
  std::string description;
};

struct ViolationReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

// Lists every row and bound violated by more than `tolerance`.
ViolationReport verify_solution(const LpProblem& problem, std::span<const double> values,
                                double tolerance);
inline ViolationReport verify_solution(const LpProblem& problem,
                                       const FractionalSolution& solution, double tolerance) {
  return verify_solution(problem, solution.values, tolerance);
}

}  // namespace motifcc

#endif  // MOTIFCC_SIMPLEX_H_
