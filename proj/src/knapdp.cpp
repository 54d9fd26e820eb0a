#include "minknap/knapdp.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "minknap/errors.hpp"

namespace minknap {

namespace {

constexpr std::uint64_t kU64Limit = std::numeric_limits<std::uint64_t>::max() / 4;

bool fits_u64(const BigInt& v) { return v >= 0 && v <= BigInt(static_cast<unsigned long>(kU64Limit)); }

std::uint64_t to_u64(const BigInt& v) { return static_cast<std::uint64_t>(v.get_ui()); }

void check_budget(std::uint64_t rows, std::uint64_t cols, const DpBudget& budget, const char* what) {
  if (cols != 0 && rows > budget.max_cells / cols) {
    throw BudgetExceeded(std::string(what) + ": table of " + std::to_string(rows) + " x " +
                         std::to_string(cols) + " cells exceeds budget of " +
                         std::to_string(budget.max_cells));
  }
}

struct Candidates {
  std::vector<std::size_t> index;  // original item index, ascending
  std::vector<BigInt> weight;
};

Candidates positive_weight_items(std::span<const BigInt> weights) {
  Candidates c;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0) throw PreconditionError("negative item weight");
    if (weights[i] > 0) {
      c.index.push_back(i);
      c.weight.push_back(weights[i]);
    }
  }
  return c;
}

Rational objective_of(std::span<const Rational> objective, const IndexSet& chosen) {
  Rational total = 0;
  for (std::size_t i : chosen) total += objective[i];
  return total;
}

// Suffix DP over profit states 0..demand: f[k][s] = cheapest way to cover a
// remaining demand s with items k..m-1. Reconstruction takes item k whenever
// that stays optimal, which yields the lexicographically smallest optimum.
template <class V>
IndexSet cover_dp_exact(const std::vector<std::size_t>& index, const std::vector<std::uint64_t>& w,
                        std::uint64_t demand, const std::vector<V>& val) {
  const std::size_t m = index.size();
  const std::size_t width = static_cast<std::size_t>(demand) + 1;
  std::vector<V> f((m + 1) * width);
  std::vector<char> ok((m + 1) * width, 0);
  ok[m * width] = 1;
  f[m * width] = V(0);
  for (std::size_t k = m; k-- > 0;) {
    const std::size_t row = k * width;
    const std::size_t next = (k + 1) * width;
    for (std::size_t s = 0; s < width; ++s) {
      bool has = ok[next + s];
      if (has) f[row + s] = f[next + s];
      const std::size_t s2 = s > w[k] ? s - static_cast<std::size_t>(w[k]) : 0;
      if (ok[next + s2]) {
        V cand = val[k] + f[next + s2];
        if (!has || cand < f[row + s]) {
          f[row + s] = std::move(cand);
          has = true;
        }
      }
      ok[row + s] = has;
    }
  }
  if (!ok[demand]) throw Infeasible("covering knapsack is infeasible");

  IndexSet chosen;
  std::size_t s = static_cast<std::size_t>(demand);
  for (std::size_t k = 0; k < m && s > 0; ++k) {
    const std::size_t next = (k + 1) * width;
    const std::size_t s2 = s > w[k] ? s - static_cast<std::size_t>(w[k]) : 0;
    if (ok[next + s2] && val[k] + f[next + s2] == f[k * width + s]) {
      chosen.push_back(index[k]);
      s = s2;
    }
  }
  return chosen;
}

// Scales the objective of the candidates to a common denominator. Returns
// false if some scaled value or the total would not fit in int64.
bool integer_objective(const Candidates& c, std::span<const Rational> objective,
                       std::vector<std::int64_t>& out) {
  BigInt lcm = 1;
  for (std::size_t i : c.index) {
    const BigInt den = objective[i].den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  BigInt total = 0;
  out.clear();
  for (std::size_t i : c.index) {
    const BigInt scaled = objective[i].num() * (lcm / objective[i].den());
    total += scaled;
    if (!scaled.fits_slong_p() || !total.fits_slong_p() || total > BigInt(1L << 61)) return false;
    out.push_back(scaled.get_si());
  }
  return true;
}

// h[k][c]: largest weight (capped at demand) coverable by items k..m-1 with
// scaled cost at most c.
template <class W>
IndexSet cover_dp_scaled(const std::vector<std::size_t>& index, const std::vector<W>& w, const W& demand,
                         const std::vector<std::uint64_t>& cost, std::uint64_t max_cost) {
  const std::size_t m = index.size();
  const std::size_t width = static_cast<std::size_t>(max_cost) + 1;
  std::vector<W> h((m + 1) * width, W(0));
  for (std::size_t k = m; k-- > 0;) {
    const std::size_t row = k * width;
    const std::size_t next = (k + 1) * width;
    for (std::size_t c = 0; c < width; ++c) {
      h[row + c] = h[next + c];
      if (c >= cost[k]) {
        W cand = w[k] + h[next + c - cost[k]];
        if (cand > demand) cand = demand;
        if (cand > h[row + c]) h[row + c] = cand;
      }
    }
  }
  std::size_t budget = width;
  for (std::size_t c = 0; c < width; ++c) {
    if (h[c] >= demand) {
      budget = c;
      break;
    }
  }
  if (budget == width) throw Infeasible("covering knapsack is infeasible");

  IndexSet chosen;
  W need = demand;
  std::size_t c = budget;
  for (std::size_t k = 0; k < m && need > W(0); ++k) {
    const std::size_t next = (k + 1) * width;
    if (c >= cost[k] && w[k] + h[next + c - cost[k]] >= need) {
      chosen.push_back(index[k]);
      need = need > w[k] ? W(need - w[k]) : W(0);
      c -= static_cast<std::size_t>(cost[k]);
    }
  }
  return chosen;
}

}  // namespace

KnapSolution solve_cover_exact(std::span<const BigInt> weights, const BigInt& demand,
                               std::span<const Rational> objective, const DpBudget& budget) {
  if (objective.size() != weights.size()) throw PreconditionError("objective dimension mismatch");
  for (const Rational& o : objective) {
    if (o < 0) throw PreconditionError("objective must be nonnegative");
  }
  if (demand <= 0) return KnapSolution{0, {}, Exactness::exact, 0};

  const Candidates c = positive_weight_items(weights);
  BigInt total = 0;
  for (const BigInt& w : c.weight) total += w;
  if (total < demand) throw Infeasible("covering knapsack is infeasible: total weight below demand");
  if (!fits_u64(demand)) throw BudgetExceeded("covering demand too large for the exact DP");
  const std::uint64_t t = to_u64(demand);
  check_budget(c.index.size() + 1, t + 1, budget, "exact min-knapsack DP");

  std::vector<std::uint64_t> w;
  w.reserve(c.weight.size());
  for (const BigInt& wi : c.weight) w.push_back(wi >= demand ? t : to_u64(wi));

  IndexSet chosen;
  std::vector<std::int64_t> scaled;
  if (integer_objective(c, objective, scaled)) {
    chosen = cover_dp_exact(c.index, w, t, scaled);
  } else {
    std::vector<Rational> val;
    val.reserve(c.index.size());
    for (std::size_t i : c.index) val.push_back(objective[i]);
    chosen = cover_dp_exact(c.index, w, t, val);
  }
  return KnapSolution{objective_of(objective, chosen), std::move(chosen), Exactness::exact, 0};
}

KnapSolution solve_cover_fptas(std::span<const BigInt> weights, const BigInt& demand,
                               std::span<const Rational> objective, const Rational& eps,
                               const DpBudget& budget) {
  if (objective.size() != weights.size()) throw PreconditionError("objective dimension mismatch");
  if (eps <= 0) throw PreconditionError("FPTAS needs eps > 0");
  for (const Rational& o : objective) {
    if (o < 0) throw PreconditionError("objective must be nonnegative");
  }
  if (demand <= 0) return KnapSolution{0, {}, Exactness::fptas, eps};

  Candidates c = positive_weight_items(weights);
  BigInt total = 0;
  for (const BigInt& w : c.weight) total += w;
  if (total < demand) throw Infeasible("covering knapsack is infeasible: total weight below demand");

  // Bottleneck M: the least objective value such that the items not above it
  // cover the demand. Every feasible set contains an item of value >= M, and
  // the items of value <= M form a feasible set of value <= m * M.
  std::vector<std::size_t> by_value(c.index.size());
  std::iota(by_value.begin(), by_value.end(), 0);
  std::stable_sort(by_value.begin(), by_value.end(), [&](std::size_t a, std::size_t b) {
    return objective[c.index[a]] < objective[c.index[b]];
  });
  BigInt covered = 0;
  Rational bottleneck = 0;
  for (std::size_t k : by_value) {
    covered += c.weight[k];
    if (covered >= demand) {
      bottleneck = objective[c.index[k]];
      break;
    }
  }

  if (bottleneck.is_zero()) {
    IndexSet chosen;
    BigInt got = 0;
    for (std::size_t k = 0; k < c.index.size() && got < demand; ++k) {
      if (objective[c.index[k]].is_zero()) {
        chosen.push_back(c.index[k]);
        got += c.weight[k];
      }
    }
    return KnapSolution{0, std::move(chosen), Exactness::fptas, eps};
  }

  const Rational m = static_cast<unsigned long>(c.index.size());
  const Rational upper = m * bottleneck;
  const Rational unit = eps * bottleneck / m;

  // Items above m*M cannot appear in an optimal set.
  Candidates kept;
  std::vector<std::uint64_t> cost;
  std::uint64_t max_cost = 0;
  for (std::size_t k = 0; k < c.index.size(); ++k) {
    const Rational& o = objective[c.index[k]];
    if (o > upper) continue;
    const BigInt s = (o / unit).floor();
    if (!fits_u64(s)) throw BudgetExceeded("FPTAS scaled cost overflow");
    kept.index.push_back(c.index[k]);
    kept.weight.push_back(c.weight[k]);
    cost.push_back(to_u64(s));
    if (o <= bottleneck) max_cost += to_u64(s);
  }
  check_budget(kept.index.size() + 1, max_cost + 1, budget, "FPTAS DP");

  IndexSet chosen;
  if (fits_u64(demand)) {
    const std::uint64_t t = to_u64(demand);
    std::vector<std::uint64_t> w;
    for (const BigInt& wi : kept.weight) w.push_back(wi >= demand ? t : to_u64(wi));
    chosen = cover_dp_scaled<std::uint64_t>(kept.index, w, t, cost, max_cost);
  } else {
    std::vector<BigInt> w;
    for (const BigInt& wi : kept.weight) w.push_back(wi >= demand ? demand : wi);
    chosen = cover_dp_scaled<BigInt>(kept.index, w, demand, cost, max_cost);
  }
  return KnapSolution{objective_of(objective, chosen), std::move(chosen), Exactness::fptas, eps};
}

KnapSolution solve_exact(const Instance& inst, std::span<const Rational> objective, const DpBudget& budget) {
  return solve_cover_exact(inst.r(), inst.q(), objective, budget);
}

KnapSolution solve_exact(const Instance& inst, const DpBudget& budget) {
  return solve_exact(inst, inst.costs(), budget);
}

KnapSolution solve_fptas(const Instance& inst, std::span<const Rational> objective, const Rational& eps,
                         const DpBudget& budget) {
  return solve_cover_fptas(inst.r(), inst.q(), objective, eps, budget);
}

KnapSolution solve_fptas(const Instance& inst, const Rational& eps, const DpBudget& budget) {
  return solve_fptas(inst, inst.costs(), eps, budget);
}

KnapSolution solve(const Instance& inst, std::span<const Rational> objective, const SolverChoice& how) {
  return how.mode == Exactness::exact ? solve_exact(inst, objective, how.budget)
                                      : solve_fptas(inst, objective, how.eps, how.budget);
}

std::vector<Rational> palpha_objective(const Instance& inst, const Point& xbar, const Rational& alpha) {
  if (xbar.size() != inst.size()) throw PreconditionError("point dimension mismatch");
  std::vector<Rational> obj(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    obj[i] = inst.profit(i) < alpha ? xbar[i] : 2 * xbar[i];
  }
  return obj;
}

KnapSolution solve_palpha(const Instance& inst, const Point& xbar, const Rational& alpha,
                          const SolverChoice& how) {
  if (alpha <= 0 || alpha > 1) throw PreconditionError("alpha must lie in (0,1]");
  const Rational scaled = alpha * Rational(inst.q());
  if (!scaled.is_integer()) throw PreconditionError("alpha is not a multiple of 1/q");
  const BigInt demand = inst.r_total() - inst.q() + scaled.num();
  const std::vector<Rational> obj = palpha_objective(inst, xbar, alpha);
  return how.mode == Exactness::exact
             ? solve_cover_exact(inst.r(), demand, obj, how.budget)
             : solve_cover_fptas(inst.r(), demand, obj, how.eps, how.budget);
}

}  // namespace minknap
