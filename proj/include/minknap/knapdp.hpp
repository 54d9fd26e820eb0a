#pragma once

#include <span>

#include "minknap/core.hpp"
#include "minknap/instance.hpp"
#include "minknap/rational.hpp"

namespace minknap {

enum class Exactness { exact, fptas };

struct KnapSolution {
  Rational value;    ///< objective evaluated exactly on `chosen`
  IndexSet chosen;   ///< sorted item indices
  Exactness exactness = Exactness::exact;
  Rational eps = 0;  ///< approximation parameter when exactness == fptas
};

/// How a min-knapsack subproblem is to be solved.
struct SolverChoice {
  Exactness mode = Exactness::exact;
  Rational eps = Rational(1, 100);
  DpBudget budget{};

  static SolverChoice exact(DpBudget budget = {}) { return {Exactness::exact, 0, budget}; }
  static SolverChoice fptas(Rational eps, DpBudget budget = {}) {
    return {Exactness::fptas, std::move(eps), budget};
  }
};

/// Covering knapsack on integer weights:
///   min objective.z  s.t.  sum weights_i z_i >= demand,  z binary.
/// Items of weight zero are never chosen. A nonpositive demand yields the
/// empty set. Throws Infeasible when sum weights < demand and BudgetExceeded
/// when the profit-state table would exceed `budget`.
///
/// Among optimal sets the lexicographically smallest sorted index list is
/// returned.
KnapSolution solve_cover_exact(std::span<const BigInt> weights, const BigInt& demand,
                               std::span<const Rational> objective, const DpBudget& budget = {});

/// Same problem with a (1+eps) guarantee. The table is indexed by scaled
/// objective values, so its size is polynomial in n and 1/eps and does not
/// depend on the magnitude of the weights.
KnapSolution solve_cover_fptas(std::span<const BigInt> weights, const BigInt& demand,
                               std::span<const Rational> objective, const Rational& eps,
                               const DpBudget& budget = {});

/// min objective.x over {x binary : p.x >= 1}.
KnapSolution solve_exact(const Instance& inst, std::span<const Rational> objective,
                         const DpBudget& budget = {});
/// Instance costs as the objective.
KnapSolution solve_exact(const Instance& inst, const DpBudget& budget = {});

KnapSolution solve_fptas(const Instance& inst, std::span<const Rational> objective, const Rational& eps,
                         const DpBudget& budget = {});
KnapSolution solve_fptas(const Instance& inst, const Rational& eps, const DpBudget& budget = {});

KnapSolution solve(const Instance& inst, std::span<const Rational> objective, const SolverChoice& how);

/// Objective of P_alpha: xbar_i for p_i < alpha, 2 xbar_i otherwise.
std::vector<Rational> palpha_objective(const Instance& inst, const Point& xbar, const Rational& alpha);

/// Solves
///   min sum_{p_i < alpha} xbar_i z_i + 2 sum_{p_i >= alpha} xbar_i z_i
///   s.t. sum p_i (1 - z_i) <= 1 - alpha,  z binary
/// in the integer form sum r_i z_i >= sum r - q + alpha q. `chosen` is the
/// set {i : z_i = 1}. Throws PreconditionError if alpha is not in (0,1] or
/// alpha q is not an integer.
KnapSolution solve_palpha(const Instance& inst, const Point& xbar, const Rational& alpha,
                          const SolverChoice& how);

}  // namespace minknap
