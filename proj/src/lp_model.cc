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

#include "motifcc/lp_model.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "motifcc/errors.h"

namespace motifcc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VarKey pair_key(VertexId u, VertexId v) {
  return {VarKind::kPair, KTuple{u, v}};
}

void check_sizes(int n, int k) {
  if (k < 2) throw InvalidParameterError("motif size must be at least 2");
  if (n < k) {
    throw InvalidParameterError("n = " + std::to_string(n) + " is below k = " +
                                std::to_string(k));
  }
}

std::string format_number(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

double parse_number(const std::string& token) {
  if (token == "inf" || token == "+inf") return kInf;
  if (token == "-inf") return -kInf;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ConfigError("LP dump: bad number '" + token + "'");
  }
  if (used != token.size()) throw ConfigError("LP dump: bad number '" + token + "'");
  return value;
}

// Pair-variable indices for [1..n], laid out in lexicographic pair order.
class PairIndex {
 public:
  PairIndex(int n, int first) : n_(n), first_(first) {}
  int operator()(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    const std::array<VertexId, 2> pair{u, v};
    return first_ + static_cast<int>(lex_rank(pair, n_));
  }

 private:
  int n_;
  int first_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Keys and rows

std::string VarKey::name() const {
  std::string s = kind == VarKind::kPair ? "z" : "x";
  for (VertexId v : vertices) s += "_" + std::to_string(v);
  return s;
}

VarKey var_key_from_name(const std::string& name) {
  if (name.size() < 3 || (name[0] != 'x' && name[0] != 'z') || name[1] != '_') {
    throw ConfigError("bad variable name '" + name + "'");
  }
  std::vector<VertexId> vertices;
  std::istringstream parts(name.substr(2));
  std::string part;
  while (std::getline(parts, part, '_')) {
    vertices.push_back(static_cast<VertexId>(parse_number(part)));
  }
  VarKey key{name[0] == 'z' ? VarKind::kPair : VarKind::kTuple, KTuple(std::move(vertices))};
  if (key.kind == VarKind::kPair && key.vertices.size() != 2) {
    throw ConfigError("pair variable '" + name + "' must name two vertices");
  }
  return key;
}

std::string_view to_string(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "?";
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kIterationLimit: return "iteration-limit";
  }
  return "?";
}

double LinearConstraint::activity(std::span<const double> values) const {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coeff * values[static_cast<std::size_t>(t.var)];
  return sum;
}

// ---------------------------------------------------------------------------
// LpProblem

int LpProblem::add_variable(VarKey key, double lower, double upper, double cost) {
  if (!(lower <= upper)) throw InvalidParameterError("variable bounds are empty");
  if (!std::isfinite(cost)) throw InvalidParameterError("objective coefficient is not finite");
  const int index = num_variables();
  auto [it, inserted] = index_.emplace(key.name(), index);
  if (!inserted) throw InvalidParameterError("duplicate variable " + key.name());
  variables_.push_back({std::move(key), lower, upper, cost});
  return index;
}

void LpProblem::add_constraint(LinearConstraint constraint) {
  std::vector<int> seen;
  seen.reserve(constraint.terms.size());
  for (const auto& t : constraint.terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw InvalidParameterError("constraint refers to unknown variable " +
                                  std::to_string(t.var));
    }
    seen.push_back(t.var);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InvalidParameterError("constraint repeats a variable");
  }
  constraints_.push_back(std::move(constraint));
}

std::optional<int> LpProblem::find(const VarKey& key) const {
  if (auto it = index_.find(key.name()); it != index_.end()) return it->second;
  return std::nullopt;
}

std::optional<int> LpProblem::pair_var(VertexId u, VertexId v) const {
  if (u == v) return std::nullopt;
  return find(pair_key(u, v));
}

std::optional<int> LpProblem::tuple_var(const KTuple& tuple) const {
  if (tuple.size() == 2) {
    // A size-2 tuple is the pair variable in the mixed relaxation.
    if (auto p = find({VarKind::kPair, tuple})) return p;
  }
  return find({VarKind::kTuple, tuple});
}

double LpProblem::objective_at(std::span<const double> values) const {
  double sum = objective_offset_;
  for (std::size_t j = 0; j < variables_.size(); ++j) sum += variables_[j].cost * values[j];
  return sum;
}

// ---------------------------------------------------------------------------
// Builders

std::uint64_t count_upsilon(int n, int k) {
  if (k < 2) throw InvalidParameterError("motif size must be at least 2");
  std::uint64_t total = 0;
  for (int i = k + 1; i <= 2 * k - 1; ++i) {
    const std::uint64_t tuples_in_union = binomial(i, k);
    // Unordered {K1, K2} whose union is a fixed i-set.
    const std::uint64_t pairs = tuples_in_union * binomial(k, 2 * k - i) / 2;
    total += binomial(n, i) * pairs * (tuples_in_union - 2);
  }
  return total;
}

LpProblem build_lp1(const MotifWeights& weights, int n, const BuildLimits& limits) {
  const int k = weights.k();
  check_sizes(n, k);
  if (weights.num_vertices() != n) {
    throw InvalidParameterError("weights cover " + std::to_string(weights.num_vertices()) +
                                " vertices, LP asked for " + std::to_string(n));
  }
  const std::uint64_t cap =
      limits.max_tuple_lp_rows ? limits.max_tuple_lp_rows : count_upsilon(15, 3);
  const std::uint64_t rows = count_upsilon(n, k);
  if (rows > cap) {
    throw SizeLimitError("tuple LP would emit " + std::to_string(rows) +
                         " rows, above the cap of " + std::to_string(cap));
  }

  LpProblem lp(n);
  std::vector<KTuple> tuples;
  tuples.reserve(binomial(n, k));
  for (const KTuple& t : enumerate_ktuples(n, k)) {
    const WeightPair w = weights.resolve(t);
    lp.add_variable({VarKind::kTuple, t}, 0.0, 1.0, w.plus - w.minus);
    lp.add_offset(w.minus);
    tuples.push_back(t);
  }

  std::vector<VertexId> merged;
  for (std::size_t a = 0; a < tuples.size(); ++a) {
    for (std::size_t b = a + 1; b < tuples.size(); ++b) {
      merged.clear();
      std::set_union(tuples[a].begin(), tuples[a].end(), tuples[b].begin(), tuples[b].end(),
                     std::back_inserter(merged));
      // Disjoint tuples have a union of exactly 2k vertices.
      if (merged.size() >= 2 * static_cast<std::size_t>(k)) continue;
      for (const KTuple& third : enumerate_ktuples(merged, k)) {
        const auto c = lex_rank(third.vertices(), n);
        if (c == a || c == b) continue;
        lp.add_constraint({{{static_cast<int>(c), 1.0},
                            {static_cast<int>(a), -1.0},
                            {static_cast<int>(b), -1.0}},
                           Sense::kLessEqual,
                           0.0});
      }
    }
  }
  return lp;
}

LpProblem build_lp2(const MotifWeights& weights, int n, const BuildLimits& limits) {
  std::vector<MotifLayer> layers;
  layers.push_back({weights, 1.0});
  return build_lp3(MixedWeights(std::move(layers)), n, limits);
}

LpProblem build_lp3(const MixedWeights& mixed, int n, const BuildLimits& limits) {
  for (const auto& layer : mixed.layers()) check_sizes(n, layer.k());
  if (mixed.num_vertices() != n) {
    throw InvalidParameterError("weights cover " + std::to_string(mixed.num_vertices()) +
                                " vertices, LP asked for " + std::to_string(n));
  }
  std::uint64_t rows = 3 * binomial(n, 3);
  for (const auto& layer : mixed.layers()) {
    if (layer.k() > 2) rows += binomial(n, layer.k()) * (binomial(layer.k(), 2) + 1);
  }
  if (rows > limits.max_pair_lp_rows) {
    throw SizeLimitError("pair LP would emit " + std::to_string(rows) +
                         " rows, above the cap of " + std::to_string(limits.max_pair_lp_rows));
  }

  LpProblem lp(n);
  for (const KTuple& pair : enumerate_ktuples(n, 2)) {
    lp.add_variable({VarKind::kPair, pair}, 0.0, 1.0, 0.0);
  }
  const PairIndex z(n, 0);

  for (const auto& layer : mixed.layers()) {
    const int k = layer.k();
    const double lambda = layer.lambda;
    if (k == 2) {
      for (const KTuple& pair : enumerate_ktuples(n, 2)) {
        const WeightPair w = layer.weights.resolve(pair);
        lp.add_cost(z(pair[0], pair[1]), lambda * (w.plus - w.minus));
        lp.add_offset(lambda * w.minus);
      }
      continue;
    }
    const double share = 1.0 / static_cast<double>(k - 1);
    std::vector<Term> sum_terms;
    for (const KTuple& tuple : enumerate_ktuples(n, k)) {
      const WeightPair w = layer.weights.resolve(tuple);
      const int x = lp.add_variable({VarKind::kTuple, tuple}, 0.0, 1.0,
                                    lambda * (w.plus - w.minus));
      lp.add_offset(lambda * w.minus);
      // Any separated pair splits the tuple.
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
          lp.add_constraint({{{x, 1.0}, {z(tuple[i], tuple[j]), -1.0}},
                             Sense::kGreaterEqual,
                             0.0});
        }
      }
      // A split tuple separates at least k - 1 pairs.
      sum_terms.assign(1, Term{x, 1.0});
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
          sum_terms.push_back({z(tuple[i], tuple[j]), -share});
        }
      }
      lp.add_constraint({sum_terms, Sense::kLessEqual, 0.0});
    }
    // x_K <= 1 is the variable's upper bound.
    lp.add_bound_constraints(binomial(n, k));
  }

  for (const KTuple& t : enumerate_ktuples(n, 3)) {
    const int ab = z(t[0], t[1]);
    const int ac = z(t[0], t[2]);
    const int bc = z(t[1], t[2]);
    lp.add_constraint({{{bc, 1.0}, {ab, -1.0}, {ac, -1.0}}, Sense::kLessEqual, 0.0});
    lp.add_constraint({{{ac, 1.0}, {ab, -1.0}, {bc, -1.0}}, Sense::kLessEqual, 0.0});
    lp.add_constraint({{{ab, 1.0}, {ac, -1.0}, {bc, -1.0}}, Sense::kLessEqual, 0.0});
  }
  return lp;
}

// ---------------------------------------------------------------------------
// Integral points and objectives

FractionalSolution induced_point(const Partition& partition, const LpProblem& problem) {
  if (partition.num_vertices() != problem.num_vertices()) {
    throw InvalidParameterError("partition and LP disagree on the vertex count");
  }
  FractionalSolution point;
  point.values.resize(static_cast<std::size_t>(problem.num_variables()));
  for (int j = 0; j < problem.num_variables(); ++j) {
    point.values[static_cast<std::size_t>(j)] =
        is_split(problem.variable(j).key.vertices, partition) ? 1.0 : 0.0;
  }
  point.objective_value = problem.objective_at(point.values);
  point.status = SolveStatus::kOptimal;
  return point;
}

double evaluate_objective(const Partition& partition, const MotifWeights& weights) {
  if (partition.num_vertices() != weights.num_vertices()) {
    throw InvalidParameterError("partition and weights disagree on the vertex count");
  }
  double cost = 0.0;
  for (const KTuple& t : enumerate_ktuples(partition.num_vertices(), weights.k())) {
    const WeightPair w = weights.resolve(t);
    cost += is_split(t, partition) ? w.plus : w.minus;
  }
  return cost;
}

double evaluate_objective(const Partition& partition, const MixedWeights& mixed) {
  double cost = 0.0;
  for (const auto& layer : mixed.layers()) {
    if (layer.lambda == 0.0) continue;
    cost += layer.lambda * evaluate_objective(partition, layer.weights);
  }
  return cost;
}

// ---------------------------------------------------------------------------
// Text dump

void write_lp(std::ostream& out, const LpProblem& problem) {
  out << "# motifcc lp v1\n";
  out << "vertices " << problem.num_vertices() << "\n";
  out << "offset " << format_number(problem.objective_offset()) << "\n";
  out << "bound_constraints " << problem.bound_constraints() << "\n";
  for (const auto& v : problem.variables()) {
    out << "var " << v.key.name() << ' ' << format_number(v.lower) << ' '
        << format_number(v.upper) << ' ' << format_number(v.cost) << "\n";
  }
  std::size_t i = 0;
  for (const auto& c : problem.constraints()) {
    out << "c_" << i++ << ":";
    for (const auto& t : c.terms) {
      out << ' ' << format_number(t.coeff) << '*' << problem.variable(t.var).key.name();
    }
    out << ' ' << to_string(c.sense) << ' ' << format_number(c.rhs) << "\n";
  }
}

LpProblem read_lp(std::istream& in) {
  LpProblem lp;
  std::string line;
  int line_no = 0;
  bool have_vertices = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    const std::string where = "LP dump line " + std::to_string(line_no) + ": ";
    try {
      if (head == "vertices") {
        int n = 0;
        fields >> n;
        lp = LpProblem(n);
        have_vertices = true;
      } else if (!have_vertices) {
        throw ConfigError("missing 'vertices' header");
      } else if (head == "offset") {
        std::string value;
        fields >> value;
        lp.add_offset(parse_number(value));
      } else if (head == "bound_constraints") {
        std::size_t count = 0;
        fields >> count;
        lp.add_bound_constraints(count);
      } else if (head == "var") {
        std::string name, lower, upper, cost;
        if (!(fields >> name >> lower >> upper >> cost)) throw ConfigError("short var line");
        lp.add_variable(var_key_from_name(name), parse_number(lower), parse_number(upper),
                        parse_number(cost));
      } else if (head.size() > 2 && head.rfind("c_", 0) == 0 && head.back() == ':') {
        LinearConstraint c;
        std::string token;
        std::vector<std::string> tokens;
        while (fields >> token) tokens.push_back(token);
        if (tokens.size() < 2) throw ConfigError("short constraint line");
        const std::string& sense = tokens[tokens.size() - 2];
        if (sense == "<=") c.sense = Sense::kLessEqual;
        else if (sense == ">=") c.sense = Sense::kGreaterEqual;
        else if (sense == "=") c.sense = Sense::kEqual;
        else throw ConfigError("unknown sense '" + sense + "'");
        c.rhs = parse_number(tokens.back());
        for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
          const auto star = tokens[i].find('*');
          if (star == std::string::npos) throw ConfigError("term without '*'");
          const auto var = lp.find(var_key_from_name(tokens[i].substr(star + 1)));
          if (!var) throw ConfigError("unknown variable in '" + tokens[i] + "'");
          c.terms.push_back({*var, parse_number(tokens[i].substr(0, star))});
        }
        lp.add_constraint(std::move(c));
      } else {
        throw ConfigError("unrecognized line");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    } catch (const Error& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (!have_vertices) throw ConfigError("LP dump is empty");
  return lp;
}

}  // namespace motifcc
