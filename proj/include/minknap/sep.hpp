#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "minknap/core.hpp"
#include "minknap/inequality.hpp"
#include "minknap/instance.hpp"
#include "minknap/knapdp.hpp"

namespace minknap {

/// A valid inequality violated by the query point.
struct Violated {
  Inequality cut;
  Rational violation;  ///< (rhs - lhs) / rhs at the query point, > 0
  Rational alpha = 0;  ///< P_alpha level that produced the cut (pitch-1/2 oracle only)
};

/// A point ybar with xbar <= ybar <= (1+eps) xbar satisfying the whole family.
struct Certified {
  Point ybar;
};

using SeparationResult = std::variant<Violated, Certified>;

inline bool is_violated(const SeparationResult& r) { return std::holds_alternative<Violated>(r); }

/// (1+eps)-oracle for pitch-1, pitch-2 and the natural relaxation.
///
/// The knapsack row, if violated, is a candidate at alpha = 0. Then solves P_alpha for every distinct
/// alpha = (r_i + 1)/q <= 1 and for alpha = 1/q; a value below 2 yields a cut
/// (the canonical pitch-2 inequality on I = {i : z_i = 1}, rebuilt at the
/// true beta(I), or a pitch-1 cut when every item of I is heavy or when
/// alpha = 1/q). All levels are evaluated and the most violated cut is kept;
/// ties go to the smallest alpha. In exact mode the certified point is xbar;
/// in fptas mode the subproblems use eps' = eps/(2+eps) and the certified
/// point is min(1, (1+eps) xbar).
SeparationResult separate_pitch12(const Instance& inst, const Point& xbar, const Rational& eps,
                                  Exactness mode, const DpBudget& budget = {});

/// The distinct levels (r_i + 1)/q <= 1 in ascending order.
std::vector<Rational> pitch2_levels(const Instance& inst);

/// The inequality a P_alpha solution z (given as I = {i : z_i = 1}) encodes,
/// or nullopt if I is empty or beta(I) <= 0. Pitch-1 cuts are shrunk to an
/// inclusion-minimal valid support, dropping items with large xbar first.
std::optional<Inequality> cut_from_palpha(const Instance& inst, const IndexSet& chosen, bool pitch1_level,
                                         const Point& xbar);

enum class KcMode { heuristic, exhaustive };

/// Knapsack cover separation. Heuristic mode tests S = {} and
/// S_t = {i : xbar_i >= t} for t in {xbar_i} and 1/2; exhaustive mode (n <= 20)
/// tests every S with p(S) < 1. Returns the most violated cut found.
std::optional<Violated> separate_kc(const Instance& inst, const Point& xbar, KcMode mode);

/// Separation over valid inequalities alpha.x >= 1 with alpha >= 0 supported
/// on a fixed set I.
struct FixedSupportResult {
  std::vector<Rational> alpha;  ///< dense, zero outside I
  Rational value;               ///< alpha.xbar
  bool violated = false;        ///< value < 1
  std::optional<Inequality> cut;
  std::vector<IndexSet> massive_rows;  ///< massive sets generated
  std::size_t lp_rounds = 0;
};

/// Solves min alpha.xbar s.t. sum_{J} alpha >= 1 for every massive J
/// (p(J) >= beta(I)), alpha >= 0, by row generation; the separating row is
/// found with the exact min-knapsack DP. With `max_pitch = k` the LP also
/// requires every k-subset of I to have coefficient sum >= 1, which
/// restricts the search to inequalities of pitch at most k. Throws
/// PreconditionError when beta(I) <= 0.
FixedSupportResult separate_fixed_support(const Instance& inst, const Point& xbar, const IndexSet& support,
                                          std::optional<std::size_t> max_pitch = std::nullopt,
                                          const DpBudget& budget = {});

/// All inclusion-minimal T with sum_{i not in T} p_i < 1, as sum_T x_i >= 1.
std::vector<Inequality> enumerate_pitch1(const Instance& inst);

/// All canonical pitch-2 inequalities pitch2_canonical(I) over I subset of [n].
std::vector<Inequality> enumerate_pitch2(const Instance& inst);

/// True iff some lambda >= 0 over `family` gives sum lambda_k w^k <= target.w
/// componentwise and sum lambda_k beta_k >= target.beta; nonnegativity rows
/// make up the componentwise slack. Decided with the exact LP.
bool implied_by(const Inequality& target, const std::vector<Inequality>& family, std::size_t n);

}  // namespace minknap
