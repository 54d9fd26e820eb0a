#include "minknap/sep.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>

#include "minknap/errors.hpp"
#include "minknap/ratlp.hpp"

namespace minknap {

namespace {

// Integer profits as int64 for the subset enumerators.
std::vector<std::int64_t> small_profits(const Instance& inst, std::int64_t& q) {
  if (!inst.r_total().fits_slong_p() || inst.r_total() > BigInt(1L << 58)) {
    throw BudgetExceeded("profit denominator too large for subset enumeration");
  }
  q = inst.q().get_si();
  std::vector<std::int64_t> r;
  r.reserve(inst.size());
  for (const BigInt& ri : inst.r()) r.push_back(ri.get_si());
  return r;
}

IndexSet mask_to_set(std::uint32_t mask, std::size_t n) {
  IndexSet s;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask & (1u << i)) s.push_back(i);
  }
  return s;
}

void keep_most_violated(std::optional<Violated>& best, Violated candidate) {
  if (candidate.violation <= 0) return;
  if (!best || candidate.violation > best->violation) best = std::move(candidate);
}

// Shrinks T while sum_T x >= 1 stays valid, dropping zero-profit items and
// then trying the largest xbar entries first (higher index first on ties).
IndexSet minimal_pitch1_support(const Instance& inst, const IndexSet& chosen, const Point& xbar) {
  IndexSet support;
  for (std::size_t i : chosen) {
    if (!inst.profit(i).is_zero()) support.push_back(i);
  }
  if (support.empty()) return support;
  IndexSet order = support;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return xbar[a] != xbar[b] ? xbar[a] > xbar[b] : a > b;
  });
  Rational outside = 1 - beta_of(inst, support);
  std::vector<bool> keep(inst.size(), false);
  for (std::size_t i : support) keep[i] = true;
  for (std::size_t i : order) {
    if (outside + inst.profit(i) < 1) {
      outside += inst.profit(i);
      keep[i] = false;
    }
  }
  IndexSet out;
  for (std::size_t i : support) {
    if (keep[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<Rational> pitch2_levels(const Instance& inst) {
  std::set<BigInt> numerators;
  for (const BigInt& r : inst.r()) {
    const BigInt next = r + 1;
    if (next <= inst.q()) numerators.insert(next);
  }
  std::vector<Rational> levels;
  for (const BigInt& num : numerators) levels.emplace_back(num, inst.q());
  return levels;
}

std::optional<Inequality> cut_from_palpha(const Instance& inst, const IndexSet& chosen, bool pitch1_level,
                                         const Point& xbar) {
  if (chosen.empty()) return std::nullopt;
  const Rational beta = beta_of(inst, chosen);
  if (beta <= 0) return std::nullopt;
  bool any_light = false;
  for (std::size_t i : chosen) any_light = any_light || inst.profit(i) < beta;
  if (pitch1_level || !any_light) {
    IndexSet support = minimal_pitch1_support(inst, chosen, xbar);
    if (support.empty()) return std::nullopt;
    return Inequality::unit(support, 1, Family::pitch1);
  }
  if (chosen.size() < 2) return std::nullopt;
  return pitch2_canonical(inst, chosen);
}

SeparationResult separate_pitch12(const Instance& inst, const Point& xbar, const Rational& eps,
                                  Exactness mode, const DpBudget& budget) {
  if (xbar.size() != inst.size()) throw PreconditionError("point dimension mismatch");
  if (eps <= 0) throw PreconditionError("eps must be positive");

  // The knapsack row competes with the P_alpha cuts as the alpha = 0 candidate.
  std::optional<Violated> best;
  if (inst.profit_of(xbar) < 1) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (!inst.profit(i).is_zero()) terms.push_back({i, inst.profit(i)});
    }
    Inequality row(std::move(terms), 1, Family::knapsack_row);
    Rational v = row.violation(xbar);
    best = Violated{std::move(row), std::move(v), 0};
  }

  const Rational eps_sub = eps / (2 + eps);
  const SolverChoice how = mode == Exactness::exact ? SolverChoice::exact(budget)
                                                    : SolverChoice::fptas(eps_sub, budget);

  auto consider = [&](const Rational& alpha, bool pitch1_level) {
    const KnapSolution z = solve_palpha(inst, xbar, alpha, how);
    if (z.value >= 2) return;
    std::optional<Inequality> cut = cut_from_palpha(inst, z.chosen, pitch1_level, xbar);
    if (!cut) return;
    Rational v = cut->violation(xbar);
    keep_most_violated(best, Violated{std::move(*cut), std::move(v), alpha});
  };

  // Ascending alpha; strict improvement keeps the smallest alpha on ties.
  consider(Rational(BigInt(1), inst.q()), true);
  for (const Rational& alpha : pitch2_levels(inst)) consider(alpha, false);

  if (best) return std::move(*best);
  if (mode == Exactness::exact) return Certified{xbar};

  const Rational inflate = (1 + eps_sub) / (1 - eps_sub);
  std::vector<Rational> y(xbar.size());
  for (std::size_t i = 0; i < xbar.size(); ++i) y[i] = min(Rational(1), inflate * xbar[i]);
  return Certified{Point(std::move(y))};
}

std::optional<Violated> separate_kc(const Instance& inst, const Point& xbar, KcMode mode) {
  if (xbar.size() != inst.size()) throw PreconditionError("point dimension mismatch");
  const std::size_t n = inst.size();
  std::optional<Violated> best;

  auto try_set = [&](const IndexSet& s) {
    if (inst.profit_of(s) >= 1) return;
    Inequality cut = kc_inequality(inst, s);
    Rational v = cut.violation(xbar);
    keep_most_violated(best, Violated{std::move(cut), std::move(v), 0});
  };

  if (mode == KcMode::heuristic) {
    try_set({});
    std::set<Rational> thresholds(xbar.begin(), xbar.end());
    thresholds.insert(Rational(1, 2));
    for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
      if (it->is_zero()) continue;
      IndexSet s;
      for (std::size_t i = 0; i < n; ++i) {
        if (xbar[i] >= *it) s.push_back(i);
      }
      try_set(s);
    }
    return best;
  }

  if (n > 20) throw PreconditionError("exhaustive KC separation is limited to n <= 20");
  std::int64_t q = 0;
  const std::vector<std::int64_t> r = small_profits(inst, q);

  // xbar_i = xs_i / den exactly.
  BigInt den = 1;
  for (const Rational& x : xbar) {
    const BigInt d = x.den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  const bool fast = den.fits_slong_p() && den < BigInt(1L << 40) && q < (1L << 40);
  if (!fast) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) try_set(mask_to_set(mask, n));
    return best;
  }
  std::vector<std::int64_t> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = BigInt(xbar[i].num() * (den / xbar[i].den())).get_si();
  const __int128 d = den.get_si();

  // violation of S = (B d - lhs) / (B d) with B = q - r(S)
  bool found = false;
  __int128 best_gap = 0, best_scale = 1;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t rs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) rs += r[i];
    }
    if (rs >= q) continue;
    const std::int64_t b = q - rs;
    __int128 lhs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) lhs += static_cast<__int128>(std::min(r[i], b)) * xs[i];
    }
    const __int128 scale = static_cast<__int128>(b) * d;
    const __int128 gap = scale - lhs;
    if (gap <= 0) continue;
    // gap/scale > best_gap/best_scale
    if (!found || gap * best_scale > best_gap * scale) {
      found = true;
      best_gap = gap;
      best_scale = scale;
      best_mask = mask;
    }
  }
  if (found) try_set(mask_to_set(best_mask, n));
  return best;
}

FixedSupportResult separate_fixed_support(const Instance& inst, const Point& xbar, const IndexSet& support_in,
                                          std::optional<std::size_t> max_pitch, const DpBudget& budget) {
  const std::size_t n = inst.size();
  if (xbar.size() != n) throw PreconditionError("point dimension mismatch");
  IndexSet support = support_in;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) throw PreconditionError("empty support");
  if (support.back() >= n) throw PreconditionError("support index outside [n]");
  const Rational beta = beta_of(inst, support);
  if (beta <= 0) throw PreconditionError("beta(I) <= 0: no valid inequality with support I");
  if (max_pitch && *max_pitch == 0) throw PreconditionError("max_pitch must be positive");

  // q * beta(I) as an integer demand over the support.
  const BigInt demand = inst.q() - (inst.r_total() - inst.r_of(support));
  std::vector<BigInt> weights(n, BigInt(0));
  for (std::size_t i : support) weights[i] = inst.r(i);

  FixedSupportResult out;
  lp::Model model;
  for (std::size_t i : support) model.add_variable(xbar[i]);
  auto row_for = [&](const IndexSet& items) {
    lp::Row row;
    for (std::size_t i : items) {
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(support.begin(), support.end(), i) - support.begin());
      row.coefs.emplace_back(pos, Rational(1));
    }
    row.sense = lp::Sense::ge;
    row.rhs = 1;
    return row;
  };

  out.massive_rows.push_back(support);
  model.add_row(row_for(support));
  for (std::size_t i : support) {
    if (support.size() > 1 && inst.profit(i) >= beta) {
      out.massive_rows.push_back({i});
      model.add_row(row_for({i}));
    }
  }

  const std::size_t k = max_pitch ? std::min(*max_pitch, support.size()) : 0;
  auto generate = [&](const lp::Solution& sol) {
    std::vector<lp::Row> rows;
    std::vector<Rational> objective(n, Rational(0));
    for (std::size_t pos = 0; pos < support.size(); ++pos) objective[support[pos]] = sol.primal[pos];
    const KnapSolution lightest = solve_cover_exact(weights, demand, objective, budget);
    if (lightest.value < 1) {
      out.massive_rows.push_back(lightest.chosen);
      rows.push_back(row_for(lightest.chosen));
    }
    if (k > 0) {
      std::vector<std::size_t> order(support.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return sol.primal[a] < sol.primal[b]; });
      Rational sum = 0;
      IndexSet smallest;
      for (std::size_t t = 0; t < k; ++t) {
        sum += sol.primal[order[t]];
        smallest.push_back(support[order[t]]);
      }
      if (sum < 1) {
        std::sort(smallest.begin(), smallest.end());
        rows.push_back(row_for(smallest));
      }
    }
    return rows;
  };

  const lp::Solution sol = lp::solve(model, generate);
  if (sol.status != lp::Status::optimal) {
    throw std::logic_error("fixed-support LP did not reach an optimum: " + lp::to_string(sol.status));
  }
  out.lp_rounds = sol.rounds;
  out.alpha.assign(n, Rational(0));
  for (std::size_t pos = 0; pos < support.size(); ++pos) out.alpha[support[pos]] = sol.primal[pos];
  out.value = sol.objective;
  out.violated = out.value < 1;
  if (out.violated) out.cut = Inequality::from_dense(out.alpha, 1, Family::fixed_support);
  return out;
}

std::vector<Inequality> enumerate_pitch1(const Instance& inst) {
  const std::size_t n = inst.size();
  if (n > 20) throw PreconditionError("pitch-1 enumeration is limited to n <= 20");
  std::int64_t q = 0;
  const std::vector<std::int64_t> r = small_profits(inst, q);
  const std::int64_t total = std::accumulate(r.begin(), r.end(), std::int64_t{0});
  std::vector<Inequality> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t in = 0;
    std::int64_t smallest = q + 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        in += r[i];
        smallest = std::min(smallest, r[i]);
      }
    }
    const std::int64_t outside = total - in;
    // valid: complement infeasible; minimal: dropping any member makes it feasible
    if (outside < q && outside + smallest >= q) {
      out.push_back(Inequality::unit(mask_to_set(mask, n), 1, Family::pitch1));
    }
  }
  return out;
}

std::vector<Inequality> enumerate_pitch2(const Instance& inst) {
  const std::size_t n = inst.size();
  if (n > 16) throw PreconditionError("pitch-2 enumeration is limited to n <= 16");
  std::int64_t q = 0;
  const std::vector<std::int64_t> r = small_profits(inst, q);
  const std::int64_t total = std::accumulate(r.begin(), r.end(), std::int64_t{0});
  std::vector<Inequality> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::int64_t in = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) in += r[i];
    }
    const std::int64_t b = q - (total - in);  // q * beta(I)
    if (b <= 0) continue;
    bool light = false;
    for (std::size_t i = 0; i < n && !light; ++i) light = (mask & (1u << i)) && r[i] < b;
    if (!light) continue;
    out.push_back(pitch2_canonical(inst, mask_to_set(mask, n)));
  }
  return out;
}

bool implied_by(const Inequality& target, const std::vector<Inequality>& family, std::size_t n) {
  const std::vector<Rational> w = target.dense(n);
  std::vector<const Inequality*> usable;
  for (const Inequality& f : family) {
    bool inside = true;
    for (const Term& t : f.terms()) {
      if (t.index >= n) throw PreconditionError("family inequality outside [n]");
      if (w[t.index].is_zero()) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    // One member scaled to the target's rhs already dominates.
    const Rational scale = target.rhs() / f.rhs();
    bool dominated = true;
    for (const Term& t : f.terms()) {
      if (scale * t.coef > w[t.index]) {
        dominated = false;
        break;
      }
    }
    if (dominated) return true;
    usable.push_back(&f);
  }
  if (usable.empty()) return false;

  lp::Model model;
  for (std::size_t k = 0; k < usable.size(); ++k) model.add_variable(0);
  std::vector<lp::Row> coord(n);
  for (std::size_t k = 0; k < usable.size(); ++k) {
    for (const Term& t : usable[k]->terms()) coord[t.index].coefs.emplace_back(k, t.coef);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (coord[j].coefs.empty()) continue;
    coord[j].sense = lp::Sense::le;
    coord[j].rhs = w[j];
    model.add_row(std::move(coord[j]));
  }
  lp::Row rhs_row;
  for (std::size_t k = 0; k < usable.size(); ++k) rhs_row.coefs.emplace_back(k, usable[k]->rhs());
  rhs_row.sense = lp::Sense::ge;
  rhs_row.rhs = target.rhs();
  model.add_row(std::move(rhs_row));
  return lp::solve(model).status == lp::Status::optimal;
}

}  // namespace minknap
