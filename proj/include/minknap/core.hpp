#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "minknap/errors.hpp"
#include "minknap/inequality.hpp"
#include "minknap/instance.hpp"
#include "minknap/rational.hpp"

namespace minknap {

/// Cap on the number of cells a pseudo-polynomial table may allocate.
struct DpBudget {
  std::uint64_t max_cells = 100'000'000;
};

/// Min-knapsack image of a max-knapsack instance
///   max v.x  s.t.  w.x <= 1,  x binary
/// under x -> 1 - x.
struct MaxKnapReduction {
  Instance instance;

  /// Max-knapsack solution (input order) for a min-knapsack solution given
  /// in input order.
  IndexSet to_max_solution(const IndexSet& min_solution_input_order) const;
};

MaxKnapReduction reduce_maxknap(std::span<const Rational> values, std::span<const Rational> weights);

/// Least k such that the k smallest coefficients sum to at least beta;
/// support_size() + 1 when even the full sum falls short.
std::size_t compute_pitch(const Inequality& ineq);

/// Exact validity over the 0/1 points of `inst`, decided by the exact
/// min-knapsack DP with objective w.
bool is_valid(const Inequality& ineq, const Instance& inst, const DpBudget& budget = {});

/// Knapsack cover inequality sum_{i not in S} min(p_i, beta) x_i >= beta with
/// beta = 1 - p(S). Throws PreconditionError when beta <= 0.
Inequality kc_inequality(const Instance& inst, const IndexSet& s);

/// beta(I) = 1 - sum_{i not in I} p_i.
Rational beta_of(const Instance& inst, const IndexSet& support);

struct Pitch2Canonical {
  IndexSet support;
  Rational beta;
  IndexSet light;  ///< {i in I : p_i < beta(I)}
  IndexSet heavy;  ///< I minus light
};

/// Splits I at beta(I). Throws PreconditionError if |I| < 2, beta(I) <= 0 or
/// the light part is empty.
Pitch2Canonical pitch2_structure(const Instance& inst, const IndexSet& support);

/// sum_{light} x_i + 2 sum_{heavy} x_i >= 2.
Inequality pitch2_canonical(const Instance& inst, const IndexSet& support);

/// Given a valid inequality with rhs 1 and pitch t >= 2, drops the variable
/// with the smallest coefficient (lowest index on ties) and lowers the rhs to
/// max(1/2, (t-2)/(t-1)). The result is valid with pitch at most t-1.
Inequality pitch_reduce(const Inequality& ineq, std::size_t t);

}  // namespace minknap
