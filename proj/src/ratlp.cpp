#include "minknap/ratlp.hpp"

#include <stdexcept>

#include "minknap/errors.hpp"

namespace minknap::lp {

std::size_t Model::add_variable(Rational cost, Rational lower, std::optional<Rational> upper) {
  if (upper && *upper < lower) throw PreconditionError("variable upper bound below lower bound");
  vars_.push_back(Variable{std::move(cost), std::move(lower), std::move(upper)});
  return vars_.size() - 1;
}

std::size_t Model::add_row(Row row) {
  for (const auto& [j, a] : row.coefs) {
    if (j >= vars_.size()) throw PreconditionError("row references unknown variable");
  }
  rows_.push_back(std::move(row));
  return rows_.size() - 1;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

enum class Kind { structural, slack, artificial };
enum class State { basic, lower, upper };

struct Column {
  Kind kind;
  std::optional<Rational> upper;  // shifted so that the lower bound is 0
  Rational cost;                  // phase-2 cost
  State state = State::lower;
};

// Dense tableau T = B^{-1} A over structural, slack and artificial columns.
// Every column carries an explicit current value; structural values are
// shifted by their lower bounds.
class Simplex {
 public:
  explicit Simplex(const Model& model) {
    for (const Variable& v : model.variables()) {
      std::optional<Rational> ub;
      if (v.upper) ub = *v.upper - v.lower;
      cols_.push_back(Column{Kind::structural, std::move(ub), v.cost});
      value_.emplace_back(0);
      lower_.push_back(v.lower);
    }
    num_structural_ = cols_.size();
    for (const Column& c : cols_) reduced_.push_back(c.cost);
    for (const Row& row : model.rows()) add_row(row);
  }

  void add_row(const Row& row) {
    // Shifted right-hand side and current activity of the structural part.
    Rational rhs = row.rhs;
    Rational activity = 0;
    std::vector<Rational> dense(cols_.size(), Rational(0));
    for (const auto& [j, a] : row.coefs) {
      if (j >= num_structural_) throw PreconditionError("row references unknown variable");
      dense[j] += a;
      rhs -= a * lower_[j];
    }
    for (std::size_t j = 0; j < num_structural_; ++j) {
      if (!dense[j].is_zero() && !value_[j].is_zero()) activity += dense[j] * value_[j];
    }

    // Express the row in the current nonbasic variables.
    for (std::size_t r = 0; r < tableau_.size(); ++r) {
      const Rational f = dense[basis_[r]];
      if (f.is_zero()) continue;
      const std::vector<Rational>& trow = tableau_[r];
      for (std::size_t j = 0; j < trow.size(); ++j) {
        if (!trow[j].is_zero()) dense[j] -= f * trow[j];
      }
    }

    RowInfo info;
    const Rational residual = rhs - activity;
    if (row.sense != Sense::eq) {
      info.slack_sign = row.sense == Sense::ge ? -1 : 1;
      info.slack = new_column(Kind::slack, std::nullopt, dense);
      dense[info.slack] = info.slack_sign;
      // slack value if it were basic: residual / slack_sign
      const Rational slack_value = residual / info.slack_sign;
      // A negative basic slack is repaired later by the dual simplex, which
      // needs the current basis to be dual feasible for the phase-2 costs.
      if (slack_value >= 0 || dual_feasible()) {
        pivot_in_new_row(dense, info.slack, Rational(info.slack_sign), slack_value);
        row_info_.push_back(info);
        return;
      }
    }
    info.art_sign = residual.sign() < 0 ? -1 : 1;
    info.art = new_column(Kind::artificial, std::nullopt, dense);
    dense[info.art] = info.art_sign;
    pivot_in_new_row(dense, info.art, Rational(info.art_sign), abs(residual));
    row_info_.push_back(info);
  }

  Solution optimize() {
    Solution sol;
    if (!infeasible_ && any_out_of_bounds()) {
      if (!dual_feasible()) throw std::logic_error("primal and dual infeasible basis");
      if (!dual_simplex()) infeasible_ = true;
    }
    bool need_phase1 = false;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (cols_[basis_[r]].kind == Kind::artificial && !value_[basis_[r]].is_zero()) need_phase1 = true;
    }
    if (need_phase1) {
      std::vector<Rational> cost(cols_.size(), Rational(0));
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (cols_[j].kind == Kind::artificial && !retired(j)) cost[j] = 1;
      }
      run(cost);
      Rational infeasibility = 0;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (cols_[j].kind == Kind::artificial) infeasibility += value_[j];
      }
      if (infeasibility > 0) {
        infeasible_ = true;
      }
    }
    // Artificials are pinned at zero from here on.
    for (Column& c : cols_) {
      if (c.kind == Kind::artificial) c.upper = Rational(0);
    }
    if (infeasible_) {
      sol.status = Status::infeasible;
      sol.pivots = pivots_;
      return sol;
    }

    std::vector<Rational> cost(cols_.size(), Rational(0));
    for (std::size_t j = 0; j < num_structural_; ++j) cost[j] = cols_[j].cost;
    const bool bounded = run(cost);
    sol.pivots = pivots_;
    if (!bounded) {
      sol.status = Status::unbounded;
      return sol;
    }

    sol.status = Status::optimal;
    sol.primal.resize(num_structural_);
    sol.reduced_costs.resize(num_structural_);
    for (std::size_t j = 0; j < num_structural_; ++j) {
      sol.primal[j] = lower_[j] + value_[j];
      sol.objective += cols_[j].cost * sol.primal[j];
      sol.reduced_costs[j] = reduced_[j];
    }
    sol.duals.resize(row_info_.size());
    for (std::size_t i = 0; i < row_info_.size(); ++i) {
      const RowInfo& info = row_info_[i];
      // d_col = 0 - y_i * sign  for a column equal to sign * e_i.
      if (info.slack != kNone) {
        sol.duals[i] = -reduced_[info.slack] / Rational(info.slack_sign);
      } else {
        sol.duals[i] = -reduced_[info.art] / Rational(info.art_sign);
      }
    }
    return sol;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct RowInfo {
    std::size_t slack = kNone;
    int slack_sign = 0;
    std::size_t art = kNone;
    int art_sign = 0;
  };

  // Nonbasic reduced costs (phase-2) have the optimal sign for their bound.
  bool dual_feasible() const {
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      const Column& c = cols_[j];
      if (c.state == State::basic || c.kind == Kind::artificial) continue;
      if (c.upper && c.upper->is_zero()) continue;
      const int s = reduced_[j].sign();
      if ((c.state == State::lower && s < 0) || (c.state == State::upper && s > 0)) return false;
    }
    return true;
  }

  bool out_of_bounds(std::size_t b) const {
    return value_[b] < 0 || (cols_[b].upper && value_[b] > *cols_[b].upper);
  }

  bool any_out_of_bounds() const {
    for (std::size_t b : basis_) {
      if (out_of_bounds(b)) return true;
    }
    return false;
  }

  // Restores primal feasibility from a dual feasible basis (smallest-index
  // rule for the leaving row and ties). Artificials count as variables in
  // [0, upper] but never enter. Returns false if a row cannot be repaired,
  // i.e. the LP is infeasible.
  bool dual_simplex() {
    for (;;) {
      std::size_t row = kNone;
      for (std::size_t r = 0; r < basis_.size(); ++r) {
        if (out_of_bounds(basis_[r]) && (row == kNone || basis_[r] < basis_[row])) row = r;
      }
      if (row == kNone) return true;
      const std::size_t b = basis_[row];
      const bool below = value_[b] < 0;
      const Rational target = below ? Rational(0) : *cols_[b].upper;
      const std::vector<Rational>& trow = tableau_[row];

      // x_b changes by -t_j * dx_j; x_b must rise when below, fall otherwise.
      std::size_t enter = kNone;
      Rational best;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        const Column& c = cols_[j];
        if (c.state == State::basic || c.kind == Kind::artificial) continue;
        if (c.upper && c.upper->is_zero()) continue;
        const int ts = trow[j].sign();
        if (ts == 0) continue;
        const int dir = c.state == State::lower ? 1 : -1;
        if ((below && -ts * dir <= 0) || (!below && -ts * dir >= 0)) continue;
        const Rational ratio = abs(reduced_[j] / trow[j]);
        if (enter == kNone || ratio < best) {
          enter = j;
          best = ratio;
        }
      }
      if (enter == kNone) return false;

      const Rational dx = (target - value_[b]) / -trow[enter];
      value_[enter] += dx;
      for (std::size_t r = 0; r < basis_.size(); ++r) {
        const Rational& t = tableau_[r][enter];
        if (!t.is_zero()) value_[basis_[r]] -= t * dx;
      }
      ++pivots_;
      cols_[b].state = below ? State::lower : State::upper;
      value_[b] = target;
      pivot(row, enter);
    }
  }

  bool retired(std::size_t j) const {
    return cols_[j].kind == Kind::artificial && cols_[j].upper && cols_[j].upper->is_zero();
  }

  std::size_t new_column(Kind kind, std::optional<Rational> upper, std::vector<Rational>& dense) {
    cols_.push_back(Column{kind, std::move(upper), Rational(0)});
    value_.emplace_back(0);
    reduced_.emplace_back(0);
    for (std::vector<Rational>& trow : tableau_) trow.emplace_back(0);
    dense.emplace_back(0);
    return cols_.size() - 1;
  }

  void pivot_in_new_row(std::vector<Rational>& dense, std::size_t col, const Rational& coef,
                        const Rational& value) {
    if (coef != 1) {
      for (Rational& a : dense) {
        if (!a.is_zero()) a /= coef;
      }
    }
    tableau_.push_back(std::move(dense));
    basis_.push_back(col);
    cols_[col].state = State::basic;
    value_[col] = value;
  }

  // Minimizes cost over the current tableau. Returns false if unbounded.
  bool run(const std::vector<Rational>& cost) {
    const std::size_t n = cols_.size();
    reduced_.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) reduced_[j] = cost[j];
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb.is_zero()) continue;
      const std::vector<Rational>& trow = tableau_[r];
      for (std::size_t j = 0; j < n; ++j) {
        if (!trow[j].is_zero()) reduced_[j] -= cb * trow[j];
      }
    }

    for (;;) {
      // Bland: first improving nonbasic column.
      std::size_t enter = kNone;
      int dir = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Column& c = cols_[j];
        if (c.state == State::basic || c.kind == Kind::artificial) continue;
        const int s = reduced_[j].sign();
        if (c.state == State::lower && s < 0 && !(c.upper && c.upper->is_zero())) {
          enter = j;
          dir = 1;
          break;
        }
        if (c.state == State::upper && s > 0) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter == kNone) return true;

      // Ratio test; ties go to the basic variable with the smallest index.
      std::optional<Rational> step;
      std::size_t leave_row = kNone;
      bool leave_to_upper = false;
      for (std::size_t r = 0; r < basis_.size(); ++r) {
        const Rational& t = tableau_[r][enter];
        if (t.is_zero()) continue;
        const std::size_t b = basis_[r];
        const int g = t.sign() * dir;  // basic moves by -t*dir per unit step
        Rational limit;
        bool to_upper = false;
        if (g > 0) {
          limit = value_[b] / abs(t);
        } else {
          if (!cols_[b].upper) continue;
          limit = (*cols_[b].upper - value_[b]) / abs(t);
          to_upper = true;
        }
        if (!step || limit < *step || (limit == *step && b < basis_[leave_row])) {
          step = limit;
          leave_row = r;
          leave_to_upper = to_upper;
        }
      }
      const std::optional<Rational>& range = cols_[enter].upper;
      const bool flip = range && (!step || *range < *step);
      if (!step && !flip) return false;
      const Rational t_step = flip ? *range : *step;

      if (!t_step.is_zero()) {
        const Rational delta = dir > 0 ? t_step : -t_step;
        value_[enter] += delta;
        for (std::size_t r = 0; r < basis_.size(); ++r) {
          const Rational& t = tableau_[r][enter];
          if (!t.is_zero()) value_[basis_[r]] -= t * delta;
        }
      }
      ++pivots_;
      if (flip) {
        cols_[enter].state = cols_[enter].state == State::lower ? State::upper : State::lower;
        continue;
      }

      const std::size_t leaving = basis_[leave_row];
      cols_[leaving].state = leave_to_upper ? State::upper : State::lower;
      value_[leaving] = leave_to_upper ? *cols_[leaving].upper : Rational(0);
      pivot(leave_row, enter);
    }
  }

  void pivot(std::size_t row, std::size_t enter) {
    std::vector<Rational>& prow = tableau_[row];
    const Rational piv = prow[enter];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < prow.size(); ++j) {
      if (prow[j].is_zero()) continue;
      if (piv != 1) prow[j] /= piv;
      nz.push_back(j);
    }
    for (std::size_t r = 0; r < tableau_.size(); ++r) {
      if (r == row) continue;
      std::vector<Rational>& trow = tableau_[r];
      if (trow[enter].is_zero()) continue;
      const Rational f = trow[enter];
      for (std::size_t j : nz) trow[j] -= f * prow[j];
    }
    if (!reduced_[enter].is_zero()) {
      const Rational f = reduced_[enter];
      for (std::size_t j : nz) reduced_[j] -= f * prow[j];
    }
    cols_[basis_[row]].state = cols_[basis_[row]].state == State::basic ? State::lower
                                                                        : cols_[basis_[row]].state;
    basis_[row] = enter;
    cols_[enter].state = State::basic;
  }

  std::vector<Column> cols_;
  std::vector<Rational> value_;
  std::vector<Rational> lower_;
  std::vector<Rational> reduced_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<std::size_t> basis_;
  std::vector<RowInfo> row_info_;
  std::size_t num_structural_ = 0;
  std::size_t pivots_ = 0;
  bool infeasible_ = false;
};

void verify(const Model& model, const Solution& sol) {
  if (sol.status != Status::optimal) return;
  if (auto err = certificate_error(model, sol)) {
    throw std::logic_error("simplex produced an invalid certificate: " + *err);
  }
}

}  // namespace

Solution solve(const Model& model) {
  Simplex simplex(model);
  Solution sol = simplex.optimize();
  verify(model, sol);
  return sol;
}

Solution solve(Model& model, const RowGenerator& generate) {
  Simplex simplex(model);
  Solution sol = simplex.optimize();
  std::size_t rounds = 1;
  while (sol.status == Status::optimal) {
    std::vector<Row> rows = generate(sol);
    if (rows.empty()) break;
    for (Row& row : rows) {
      simplex.add_row(row);
      model.add_row(std::move(row));
    }
    sol = simplex.optimize();
    ++rounds;
  }
  sol.rounds = rounds;
  verify(model, sol);
  return sol;
}

std::optional<std::string> certificate_error(const Model& model, const Solution& sol) {
  const auto& vars = model.variables();
  const auto& rows = model.rows();
  if (sol.primal.size() != vars.size() || sol.duals.size() != rows.size()) {
    return std::string("solution dimensions do not match the model");
  }
  Rational primal_obj = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const Rational& x = sol.primal[j];
    if (x < vars[j].lower || (vars[j].upper && x > *vars[j].upper)) {
      return "variable " + std::to_string(j) + " violates its bounds";
    }
    primal_obj += vars[j].cost * x;
  }
  if (primal_obj != sol.objective) return std::string("reported objective differs from c.x");

  std::vector<Rational> rc(vars.size());
  for (std::size_t j = 0; j < vars.size(); ++j) rc[j] = vars[j].cost;
  Rational dual_obj = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    const Rational& y = sol.duals[i];
    Rational activity = 0;
    for (const auto& [j, a] : row.coefs) {
      activity += a * sol.primal[j];
      if (!y.is_zero()) rc[j] -= a * y;
    }
    switch (row.sense) {
      case Sense::ge:
        if (activity < row.rhs) return "row " + std::to_string(i) + " (>=) violated";
        if (y < 0) return "row " + std::to_string(i) + " has a negative multiplier";
        break;
      case Sense::le:
        if (activity > row.rhs) return "row " + std::to_string(i) + " (<=) violated";
        if (y > 0) return "row " + std::to_string(i) + " has a positive multiplier";
        break;
      case Sense::eq:
        if (activity != row.rhs) return "row " + std::to_string(i) + " (=) violated";
        break;
    }
    if (!y.is_zero() && activity != row.rhs) {
      return "complementary slackness fails on row " + std::to_string(i);
    }
    dual_obj += row.rhs * y;
  }
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (!sol.reduced_costs.empty() && sol.reduced_costs[j] != rc[j]) {
      return "reduced cost of variable " + std::to_string(j) + " inconsistent with duals";
    }
    const int s = rc[j].sign();
    if (s > 0) {
      if (sol.primal[j] != vars[j].lower) return "variable " + std::to_string(j) + " not at lower bound";
      dual_obj += rc[j] * vars[j].lower;
    } else if (s < 0) {
      if (!vars[j].upper || sol.primal[j] != *vars[j].upper) {
        return "variable " + std::to_string(j) + " not at upper bound";
      }
      dual_obj += rc[j] * *vars[j].upper;
    }
  }
  if (dual_obj != primal_obj) {
    return "duality gap: primal " + primal_obj.str() + " vs dual " + dual_obj.str();
  }
  return std::nullopt;
}

}  // namespace minknap::lp
