#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minknap/rational.hpp"

namespace minknap::lp {

enum class Sense { ge, le, eq };

struct Row {
  std::vector<std::pair<std::size_t, Rational>> coefs;
  Sense sense = Sense::ge;
  Rational rhs = 0;
};

struct Variable {
  Rational cost = 0;
  Rational lower = 0;
  std::optional<Rational> upper;  ///< nullopt = +infinity
};

/// min cost.x  s.t.  rows,  lower <= x <= upper.
class Model {
 public:
  std::size_t add_variable(Rational cost, Rational lower = 0, std::optional<Rational> upper = std::nullopt);
  std::size_t add_row(Row row);

  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

enum class Status { optimal, infeasible, unbounded };

std::string to_string(Status s);

struct Solution {
  Status status = Status::infeasible;
  std::vector<Rational> primal;         ///< one value per variable
  Rational objective = 0;
  std::vector<Rational> duals;          ///< one multiplier per row
  std::vector<Rational> reduced_costs;  ///< cost_j - (A^T y)_j
  std::size_t pivots = 0;
  std::size_t rounds = 1;               ///< solves performed under row generation
};

/// Called with each optimal solution; returns rows to add, or nothing to stop.
using RowGenerator = std::function<std::vector<Row>(const Solution&)>;

/// Exact bounded-variable primal simplex with Bland's rule. Optimal solutions
/// carry exact duals and are checked against `certificate_error` before being
/// returned (a failed check throws std::logic_error).
Solution solve(const Model& model);

/// Solves, then repeatedly appends the rows returned by `generate` and
/// re-optimizes from the current basis until no rows are returned. The added
/// rows are appended to `model`.
Solution solve(Model& model, const RowGenerator& generate);

/// Exact optimality certificate: primal feasibility, dual sign conditions,
/// complementary slackness and equal primal/dual objectives. Returns a
/// description of the first violated condition, or nullopt.
std::optional<std::string> certificate_error(const Model& model, const Solution& sol);

}  // namespace minknap::lp
