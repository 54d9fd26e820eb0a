#include "minknap/cutloop.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "minknap/core.hpp"
#include "minknap/errors.hpp"
#include "minknap/ratlp.hpp"

namespace minknap {

bool CutPool::add(const Inequality& cut) {
  auto [it, inserted] = index_.emplace(cut.key(), cuts_.size());
  if (inserted) cuts_.push_back(cut);
  return inserted;
}

bool CutPool::contains(const Inequality& cut) const { return index_.contains(cut.key()); }

std::size_t CutPool::count(Family f) const {
  return static_cast<std::size_t>(
      std::count_if(cuts_.begin(), cuts_.end(), [f](const Inequality& c) { return c.family() == f; }));
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::certified: return "certified";
    case Termination::no_cut_found: return "no-cut-found";
    case Termination::max_iter: return "max-iter";
  }
  return "?";
}

namespace {

// Maps items to LP columns. Without aggregation every item has its own
// column; with aggregation items of equal profit and cost share one.
struct Columns {
  std::vector<std::size_t> of_item;
  std::vector<std::size_t> size;

  static Columns build(const Instance& inst, bool aggregate) {
    Columns c;
    std::map<std::pair<Rational, Rational>, std::size_t> seen;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      std::size_t col = c.size.size();
      if (aggregate) {
        auto [it, fresh] = seen.emplace(std::make_pair(inst.profit(i), inst.cost(i)), col);
        col = it->second;
        if (!fresh) {
          c.of_item.push_back(col);
          ++c.size[col];
          continue;
        }
      }
      c.of_item.push_back(col);
      c.size.push_back(1);
    }
    return c;
  }

  lp::Row row(const Inequality& cut) const {
    std::vector<Rational> dense(size.size(), Rational(0));
    for (const Term& t : cut.terms()) dense[of_item[t.index]] += t.coef;
    lp::Row r;
    for (std::size_t j = 0; j < dense.size(); ++j) {
      if (!dense[j].is_zero()) r.coefs.emplace_back(j, dense[j]);
    }
    r.sense = lp::Sense::ge;
    r.rhs = cut.rhs();
    return r;
  }

  lp::Model natural_model(const Instance& inst) const {
    lp::Model model;
    std::vector<Rational> cost(size.size());
    for (std::size_t i = 0; i < inst.size(); ++i) cost[of_item[i]] += inst.cost(i);
    for (std::size_t j = 0; j < size.size(); ++j) model.add_variable(cost[j], 0, Rational(1));
    const Inequality knap = knapsack_row(inst);
    model.add_row(row(knap));
    return model;
  }

  Point expand(const std::vector<Rational>& x) const {
    std::vector<Rational> v(of_item.size());
    for (std::size_t i = 0; i < of_item.size(); ++i) v[i] = min(Rational(1), max(Rational(0), x[of_item[i]]));
    return Point(std::move(v));
  }

  static Inequality knapsack_row(const Instance& inst) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < inst.size(); ++i) terms.push_back({i, inst.profit(i)});
    return Inequality(std::move(terms), 1, Family::knapsack_row);
  }
};

}  // namespace

LpPoint solve_relaxation(const Instance& inst, const std::vector<Inequality>& cuts) {
  const Columns cols = Columns::build(inst, false);
  lp::Model model = cols.natural_model(inst);
  for (const Inequality& c : cuts) model.add_row(cols.row(c));
  const lp::Solution sol = lp::solve(model);
  if (sol.status != lp::Status::optimal) throw std::logic_error("relaxation not optimal: " + lp::to_string(sol.status));
  return {cols.expand(sol.primal), sol.objective};
}

GapReport run(const Instance& inst, const CutLoopConfig& config, const std::string& instance_id) {
  GapReport report;
  report.instance_id = instance_id;
  report.kc_exhaustive = config.kc && config.kc_mode == KcMode::exhaustive;
  report.p12_exact = config.p12 && config.mode == Exactness::exact;
  report.int_opt = solve_exact(inst, config.budget).value;

  const std::size_t n = inst.size();
  CutPool pool;
  const Columns cols = Columns::build(inst, config.aggregate_identical);
  lp::Model model = cols.natural_model(inst);
  std::size_t iterations = 0;

  auto separate = [&](const Point& x, bool& certified) -> std::optional<Violated> {
    certified = false;
    if (config.kc) {
      if (auto v = separate_kc(inst, x, config.kc_mode)) return v;
    }
    if (config.p12) {
      SeparationResult r = separate_pitch12(inst, x, config.eps, config.mode, config.budget);
      if (auto* v = std::get_if<Violated>(&r)) return std::move(*v);
      certified = true;
    }
    if (config.fixed_support) {
      std::vector<IndexSet> supports;
      IndexSet positive;
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] > 0) positive.push_back(i);
      }
      supports.push_back(positive);
      if (config.fs_full_support && positive.size() < n) {
        IndexSet all(n);
        std::iota(all.begin(), all.end(), 0);
        supports.push_back(all);
      }
      std::optional<Violated> best;
      for (const IndexSet& s : supports) {
        if (s.empty() || beta_of(inst, s) <= 0) continue;
        FixedSupportResult fs = separate_fixed_support(inst, x, s, config.fs_max_pitch, config.budget);
        if (!fs.violated) continue;
        Rational v = fs.cut->violation(x);
        if (!best || v > best->violation) best = Violated{std::move(*fs.cut), std::move(v), 0};
      }
      if (best) {
        certified = false;
        return best;
      }
    }
    return std::nullopt;
  };

  auto generate = [&](const lp::Solution& sol) -> std::vector<lp::Row> {
    if (!report.lp_values.empty() && sol.objective < report.lp_values.back()) {
      throw std::logic_error("LP value decreased after adding a cut");
    }
    report.lp_values.push_back(sol.objective);
    if (iterations >= config.max_iter) {
      report.reason = Termination::max_iter;
      return {};
    }
    bool certified = false;
    const std::optional<Violated> cut = separate(cols.expand(sol.primal), certified);
    if (!cut) {
      report.reason = certified ? Termination::certified : Termination::no_cut_found;
      return {};
    }
    if (config.assert_valid && !is_valid(cut->cut, inst, config.budget)) {
      throw std::logic_error("separator returned an invalid cut: " + cut->cut.str());
    }
    if (!pool.add(cut->cut)) throw std::logic_error("separator returned a cut already in the pool");
    ++iterations;
    return {cols.row(cut->cut)};
  };

  const lp::Solution sol = lp::solve(model, generate);
  if (sol.status != lp::Status::optimal) throw std::logic_error("relaxation not optimal: " + lp::to_string(sol.status));

  report.lp_value = sol.objective;
  report.gap = report.int_opt / report.lp_value;
  report.final_point = cols.expand(sol.primal);
  report.cuts = pool.cuts();
  report.cuts_kc = pool.count(Family::kc);
  report.cuts_p12 = pool.count(Family::pitch1) + pool.count(Family::pitch2_canonical) + pool.count(Family::knapsack_row);
  report.cuts_fs = pool.count(Family::fixed_support);
  return report;
}

Rounding round_kc(const Instance& inst, const Point& xbar) {
  const std::size_t n = inst.size();
  if (xbar.size() != n) throw PreconditionError("point dimension mismatch");
  IndexSet s;
  for (std::size_t i = 0; i < n; ++i) {
    if (xbar[i] >= Rational(1, 2)) s.push_back(i);
  }
  const Rational b = 1 - inst.profit_of(s);

  Rounding out;
  out.guaranteed = b <= 0 || kc_inequality(inst, s).satisfied_by(xbar);
  const Rational lp_cost = inst.cost_of(xbar);
  auto finish = [&](IndexSet chosen) {
    std::sort(chosen.begin(), chosen.end());
    out.chosen = std::move(chosen);
    out.cost = inst.cost_of(out.chosen);
    if (out.guaranteed && out.cost > 2 * lp_cost) {
      throw std::logic_error("rounding exceeded twice the LP cost");
    }
    return out;
  };
  if (b <= 0) return finish(s);

  IndexSet rest = complement(s, n);
  std::vector<Rational> pr(n);
  for (std::size_t i : rest) pr[i] = min(inst.profit(i), b);
  // density ascending; zero residual profit last
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t c) {
    if (pr[a].is_zero() || pr[c].is_zero()) return !pr[a].is_zero() && pr[c].is_zero();
    return inst.cost(a) * pr[c] < inst.cost(c) * pr[a];
  });

  Rational total = 0;
  for (std::size_t i : rest) total += pr[i];
  if (total < b) throw Infeasible("residual items cannot cover the remaining demand");

  Rational prefix = 0;
  std::size_t m = rest.size();
  for (std::size_t t = 0; t < rest.size(); ++t) {
    prefix += pr[rest[t]];
    if (prefix / 2 >= b) {
      m = t + 1;
      break;
    }
  }
  std::size_t take = m;
  if (m < rest.size() || prefix / 2 >= b) {
    if (prefix - pr[rest[m - 1]] >= b) take = m - 1;
  } else {
    // half-sums never reach b': smallest covering prefix
    Rational run_sum = 0;
    for (take = 0; take < rest.size() && run_sum < b; ++take) run_sum += pr[rest[take]];
  }
  IndexSet chosen = s;
  chosen.insert(chosen.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(take));
  return finish(std::move(chosen));
}

}  // namespace minknap
