#include "minknap/core.hpp"

#include <algorithm>

#include "minknap/knapdp.hpp"

namespace minknap {

IndexSet MaxKnapReduction::to_max_solution(const IndexSet& min_solution_input_order) const {
  return complement(min_solution_input_order, instance.size());
}

MaxKnapReduction reduce_maxknap(std::span<const Rational> values, std::span<const Rational> weights) {
  if (values.size() != weights.size()) throw PreconditionError("values and weights differ in length");
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (values[i] <= 0 || weights[i] <= 0) throw PreconditionError("values and weights must be positive");
    total += weights[i];
  }
  if (total <= 1) throw PreconditionError("reduction needs sum of weights > 1");
  const Rational scale = total - 1;
  RawInstance raw;
  raw.threshold = 1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    raw.items.push_back({"x" + std::to_string(i + 1), values[i], weights[i] / scale});
  }
  return MaxKnapReduction{Instance::normalize(raw)};
}

std::size_t compute_pitch(const Inequality& ineq) {
  std::vector<Rational> coefs;
  coefs.reserve(ineq.support_size());
  for (const Term& t : ineq.terms()) coefs.push_back(t.coef);
  std::sort(coefs.begin(), coefs.end());
  Rational sum = 0;
  for (std::size_t k = 0; k < coefs.size(); ++k) {
    sum += coefs[k];
    if (sum >= ineq.rhs()) return k + 1;
  }
  return coefs.size() + 1;
}

bool is_valid(const Inequality& ineq, const Instance& inst, const DpBudget& budget) {
  const std::vector<Rational> w = ineq.dense(inst.size());
  return solve_exact(inst, w, budget).value >= ineq.rhs();
}

Rational beta_of(const Instance& inst, const IndexSet& support) {
  return 1 - inst.profit_of(complement(support, inst.size()));
}

Inequality kc_inequality(const Instance& inst, const IndexSet& s) {
  const Rational beta = 1 - inst.profit_of(s);
  if (beta <= 0) throw PreconditionError("no knapsack cover inequality: p(S) >= 1");
  std::vector<Term> terms;
  for (std::size_t i : complement(s, inst.size())) terms.push_back({i, min(inst.profit(i), beta)});
  return Inequality(std::move(terms), beta, Family::kc);
}

Pitch2Canonical pitch2_structure(const Instance& inst, const IndexSet& support) {
  if (support.size() < 2) throw PreconditionError("pitch-2 support needs |I| >= 2");
  Pitch2Canonical out;
  out.support = support;
  std::sort(out.support.begin(), out.support.end());
  out.beta = beta_of(inst, out.support);
  if (out.beta <= 0) throw PreconditionError("beta(I) <= 0: no valid inequality with this support");
  for (std::size_t i : out.support) {
    (inst.profit(i) < out.beta ? out.light : out.heavy).push_back(i);
  }
  if (out.light.empty()) throw PreconditionError("I1 is empty: every p_i >= beta(I)");
  return out;
}

Inequality pitch2_canonical(const Instance& inst, const IndexSet& support) {
  const Pitch2Canonical s = pitch2_structure(inst, support);
  std::vector<Term> terms;
  for (std::size_t i : s.light) terms.push_back({i, Rational(1)});
  for (std::size_t i : s.heavy) terms.push_back({i, Rational(2)});
  return Inequality(std::move(terms), Rational(2), Family::pitch2_canonical);
}

Inequality pitch_reduce(const Inequality& ineq, std::size_t t) {
  if (t < 2) throw PreconditionError("pitch reduction needs t >= 2");
  const Inequality unit = ineq.normalized();
  if (unit.support_size() < 2) throw PreconditionError("pitch reduction needs at least two variables");
  auto smallest = std::min_element(unit.terms().begin(), unit.terms().end(),
                                   [](const Term& a, const Term& b) { return a.coef < b.coef; });
  std::vector<Term> terms;
  for (auto it = unit.terms().begin(); it != unit.terms().end(); ++it) {
    if (it != smallest) terms.push_back(*it);
  }
  const Rational rhs = max(Rational(1, 2), Rational(static_cast<long>(t) - 2, static_cast<long>(t) - 1));
  return Inequality(std::move(terms), rhs, ineq.family());
}

}  // namespace minknap
