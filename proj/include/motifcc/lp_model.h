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

#ifndef MOTIFCC_LP_MODEL_H_
#define MOTIFCC_LP_MODEL_H_

// Linear relaxations of motif correlation clustering.
//
// x_K in [0,1] is the split indicator of a k-tuple K (0 = inside one cluster)
// and z_uv in [0,1] the separation indicator of a vertex pair (0 = same
// cluster, 1 = different clusters). Three relaxations are built:
//
//   tuple LP    x only; x_K3 <= x_K1 + x_K2 over every admissible tuple triple
//   pair LP     x and z; x_K >= z_uv, (k-1) x_K <= sum z over K, and the
//               metric inequalities on z
//   mixed LP    the pair LP over several motif sizes with relevance factors;
//               a size-2 layer reuses z_uv as its tuple variable

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "motifcc/graph.h"
#include "motifcc/motif.h"

namespace motifcc {

enum class VarKind { kTuple, kPair };

struct VarKey {
  VarKind kind = VarKind::kTuple;
  KTuple vertices;

  // "x_1_2_3" for tuple variables, "z_1_2" for pair variables.
  std::string name() const;
  friend bool operator==(const VarKey&, const VarKey&) = default;
};

// Parses a name produced by VarKey::name.
VarKey var_key_from_name(const std::string& name);

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

std::string_view to_string(Sense sense);

struct Term {
  int var = 0;
  double coeff = 0.0;
};

struct LinearConstraint {
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;

  double activity(std::span<const double> values) const;
};

struct Variable {
  VarKey key;
  double lower = 0.0;
  double upper = 1.0;
  double cost = 0.0;
};

// Minimize cost . x + objective_offset subject to the rows and variable bounds.
class LpProblem {
 public:
  LpProblem() = default;
  explicit LpProblem(int num_vertices) : num_vertices_(num_vertices) {}

  // Returns the dense index. Throws InvalidParameterError on duplicate keys.
  int add_variable(VarKey key, double lower, double upper, double cost);
  // Throws InvalidParameterError on duplicate or unknown variables.
  void add_constraint(LinearConstraint constraint);
  void add_cost(int var, double delta) { variables_[static_cast<std::size_t>(var)].cost += delta; }
  void add_offset(double delta) { objective_offset_ += delta; }
  // Records constraints of the formulation that are enforced as variable
  // bounds instead of rows (x_K <= 1).
  void add_bound_constraints(std::size_t count) { bound_constraints_ += count; }

  int num_vertices() const { return num_vertices_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  std::size_t num_constraints() const { return constraints_.size(); }
  // Rows plus the formulation constraints realized as bounds.
  std::size_t structural_constraint_count() const {
    return constraints_.size() + bound_constraints_;
  }
  std::size_t bound_constraints() const { return bound_constraints_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(int i) const { return variables_[static_cast<std::size_t>(i)]; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  double objective_offset() const { return objective_offset_; }

  std::optional<int> find(const VarKey& key) const;
  std::optional<int> pair_var(VertexId u, VertexId v) const;
  std::optional<int> tuple_var(const KTuple& tuple) const;

  double objective_at(std::span<const double> values) const;

 private:
  int num_vertices_ = 0;
  std::vector<Variable> variables_;
  std::vector<LinearConstraint> constraints_;
  double objective_offset_ = 0.0;
  std::size_t bound_constraints_ = 0;
  std::unordered_map<std::string, int> index_;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string_view to_string(SolveStatus status);

struct FractionalSolution {
  std::vector<double> values;
  double objective_value = 0.0;
  SolveStatus status = SolveStatus::kOptimal;
};

struct BuildLimits {
  // Largest number of rows a builder may emit. The default admits the tuple
  // LP up to n = 15 for k = 3.
  std::uint64_t max_tuple_lp_rows = 0;  // 0: count_upsilon(15, 3)
  std::uint64_t max_pair_lp_rows = 20'000'000;
};

// |{(K1, K2, K3)}| of the tuple LP: unordered {K1, K2} with a common vertex and
// K3 a third tuple inside K1 u K2.
std::uint64_t count_upsilon(int n, int k);

LpProblem build_lp1(const MotifWeights& weights, int n, const BuildLimits& limits = {});
LpProblem build_lp2(const MotifWeights& weights, int n, const BuildLimits& limits = {});
LpProblem build_lp3(const MixedWeights& mixed, int n, const BuildLimits& limits = {});

// The 0/1 point of a partition: x_K = 1 iff K is split, z_uv = 1 iff u and v
// are separated.
FractionalSolution induced_point(const Partition& partition, const LpProblem& problem);

// Sum over layers of lambda * (w- of contained tuples + w+ of split tuples).
double evaluate_objective(const Partition& partition, const MixedWeights& mixed);
double evaluate_objective(const Partition& partition, const MotifWeights& weights);

// Plain-text dump. Header lines, then one variable and one row per line:
//   vertices <n>
//   offset <c>
//   bound_constraints <m>
//   var <name> <lower> <upper> <cost>
//   c_<i>: <coeff>*<name> <coeff>*<name> ... <= | >= | = <rhs>
void write_lp(std::ostream& out, const LpProblem& problem);
LpProblem read_lp(std::istream& in);

}  // namespace motifcc

#endif  // MOTIFCC_LP_MODEL_H_
