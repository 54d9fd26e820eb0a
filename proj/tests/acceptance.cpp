// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "minknap/core.hpp"
#include "minknap/cutloop.hpp"
#include "minknap/gaplab.hpp"
#include "minknap/knapdp.hpp"
#include "minknap/ratlp.hpp"
#include "minknap/sep.hpp"
#include "support/oracles.hpp"

using namespace minknap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Failures {
 public:
  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (count_++ < 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    if (count_ == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(count_) + " failures, e.g. " + first_};
  }

 private:
  std::size_t count_ = 0;
  std::string first_;
};

bool satisfies_all(const std::vector<Inequality>& family, const Point& x) {
  for (const Inequality& f : family) {
    if (!f.satisfied_by(x)) return false;
  }
  return true;
}

std::vector<Inequality> pitch12_family(const Instance& inst) {
  std::vector<Inequality> f = enumerate_pitch1(inst);
  for (Inequality& c : enumerate_pitch2(inst)) f.push_back(std::move(c));
  return f;
}

std::size_t seeded_size(std::uint64_t seed, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(seed % (hi - lo + 1));
}

Instance seeded_instance(std::uint64_t seed, std::size_t n, bool p_equals_c) {
  return Instance::normalize(gaplab::gen_random(n, seed, p_equals_c));
}

Outcome pitch3_facts() {
  const Instance inst = Instance::normalize(gaplab::gen_pitch3_wild());
  const Inequality a = Inequality::from_dense(
      inst.to_sorted(std::vector<Rational>{1, 0, 1, 1, 2, 1, 2}), 3, Family::user);
  const Inequality b = Inequality::from_dense(
      inst.to_sorted(std::vector<Rational>{1, 1, 2, 3, 4, 3, 4}), 8, Family::user);
  Failures f;
  f.check(compute_pitch(a) == 3, "pitch of the first inequality is not 3");
  f.check(is_valid(a, inst) && oracle::valid(a, inst), "first inequality invalid");
  f.check(is_valid(b, inst) && oracle::valid(b, inst), "second inequality invalid");
  return f.outcome("pitch 3, both valid over all 128 points");
}

Outcome sqrt_gap_family() {
  const Rational eps(1, 8);
  const std::vector<long> ns{4, 9, 16, 25};
  Failures f;
  Rational previous = 0;
  std::ostringstream gaps;
  for (long n : ns) {
    const Instance inst = Instance::normalize(gaplab::gen_lemma4(n, eps));
    const Rational root = gaplab::square_root(n);
    f.check(solve_exact(inst).value == root + eps, "solve_exact at n=" + std::to_string(n));
    const Point x = inst.to_sorted(gaplab::lemma4_point(n));
    f.check(inst.profit_of(x) >= 1, "point misses the knapsack row at n=" + std::to_string(n));
    const Rational unit(BigInt(1), inst.q());
    f.check(solve_palpha(inst, x, unit, SolverChoice::exact()).value >= 2,
            "pitch-1 separation cuts the point at n=" + std::to_string(n));
    const GapReport rep = run(inst, gaplab::prescribed_config(gaplab::GapFamily::lemma4, {eps, 2}));
    const Rational bound = (root + eps) / gaplab::lemma4_point_cost(n, eps);
    f.check(rep.reason == Termination::certified, "loop not certified at n=" + std::to_string(n));
    f.check(rep.gap >= bound, "gap below bound at n=" + std::to_string(n));
    f.check(bound > previous, "bound not increasing at n=" + std::to_string(n));
    previous = bound;
    gaps << (gaps.tellp() ? " " : "") << "n=" << n << ":" << rep.gap.to_decimal(4) << ">=" << bound.to_decimal(4);
  }
  return f.outcome(gaps.str());
}

Outcome ola_family() {
  Failures f;
  std::ostringstream info;
  const Instance four = Instance::normalize(gaplab::gen_ola(4));
  f.check(solve_exact(four).value == 2, "integer optimum at n=4 is not 2");
  const std::vector<Inequality> p1 = enumerate_pitch1(four);
  const std::vector<Inequality> p2 = enumerate_pitch2(four);
  for (std::size_t k : {1u, 2u}) {
    const Point x = four.to_sorted(gaplab::ola_point(4, k));
    const std::string tag = " (n=4 k=" + std::to_string(k) + ")";
    f.check(four.profit_of(x) >= 1, "natural row" + tag);
    for (std::uint32_t mask = 0; mask < (1u << four.size()); ++mask) {
      const IndexSet s = oracle::subset(mask, four.size());
      if (four.profit_of(s) >= 1) continue;
      if (!kc_inequality(four, s).satisfied_by(x)) {
        f.check(false, "KC cut violated" + tag);
        break;
      }
    }
    f.check(satisfies_all(p1, x), "pitch-1 cut violated" + tag);
    if (k >= 2) f.check(satisfies_all(p2, x), "pitch-2 cut violated" + tag);
  }
  for (std::size_t k : {1u, 2u}) {
    const long n = 100;
    const Instance inst = Instance::normalize(gaplab::gen_ola(n));
    const GapReport rep = run(inst, gaplab::prescribed_config(gaplab::GapFamily::ola, {Rational(1, 8), k}));
    const std::string tag = " (n=100 k=" + std::to_string(k) + ")";
    f.check(rep.reason == Termination::certified, "loop not certified" + tag);
    f.check(rep.int_opt == 2, "integer optimum" + tag);
    f.check(rep.lp_value <= gaplab::ola_point_cost(n, k), "LP above the point's cost" + tag);
    f.check(rep.gap >= 2 / (1 + Rational(static_cast<long>(k) + 1, 10)), "gap bound" + tag);
    info << (info.tellp() ? " " : "") << "k=" << k << ":lp=" << rep.lp_value << ",gap=" << rep.gap.to_decimal(4);
  }
  return f.outcome("n=4 point checks; n=100 " + info.str());
}

// LP over the natural relaxation plus every enumerated pitch-1/2 cut, adding
// violated members until none is left.
Rational full_closure_value(const Instance& inst) {
  const std::vector<Inequality> family = pitch12_family(inst);
  std::vector<Inequality> active;
  std::vector<bool> used(family.size(), false);
  for (;;) {
    const LpPoint lp = solve_relaxation(inst, active);
    bool added = false;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!used[i] && !family[i].satisfied_by(lp.x)) {
        used[i] = true;
        active.push_back(family[i]);
        added = true;
      }
    }
    if (!added) return lp.value;
  }
}

Outcome gap_three_halves() {
  Failures f;
  Rational worst = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = seeded_instance(seed, seeded_size(seed, 2, 10), true);
    const Rational opt = solve_exact(inst).value;
    const Rational lp = full_closure_value(inst);
    const Rational gap = opt / lp;
    worst = max(worst, gap);
    f.check(gap <= Rational(3, 2), "seed " + std::to_string(seed) + " gap " + gap.str());
  }
  return f.outcome("200 instances, worst gap " + worst.str());
}

Outcome oracle_contract() {
  Failures f;
  std::mt19937_64 rng(5);
  std::size_t violated = 0, certified = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const Instance inst = seeded_instance(1000 + t, seeded_size(t, 2, 10), t % 3 == 0);
    const Rational eps = t % 2 ? Rational(1, 10) : Rational(1, 2);
    // Mostly large entries so both outcomes occur.
    std::uniform_int_distribution<long> d(t % 4 == 0 ? 0 : 3, 8);
    std::vector<Rational> v;
    for (std::size_t i = 0; i < inst.size(); ++i) v.emplace_back(d(rng), 8);
    const Point x(std::move(v));
    const std::string tag = "triple " + std::to_string(t);
    const SeparationResult r = separate_pitch12(inst, x, eps, Exactness::fptas);
    if (const auto* cut = std::get_if<Violated>(&r)) {
      ++violated;
      f.check(is_valid(cut->cut, inst), tag + ": invalid cut");
      f.check(!cut->cut.satisfied_by(x), tag + ": cut not violated");
      continue;
    }
    ++certified;
    const Point& y = std::get<Certified>(r).ybar;
    bool bounds = y.size() == x.size();
    for (std::size_t i = 0; bounds && i < x.size(); ++i) {
      bounds = x[i] <= y[i] && y[i] <= (1 + eps) * x[i] && y[i] >= 0 && y[i] <= 1;
    }
    f.check(bounds, tag + ": ybar out of bounds");
    f.check(satisfies_all(pitch12_family(inst), y), tag + ": ybar violates an enumerated cut");
  }
  return f.outcome(std::to_string(violated) + " violated, " + std::to_string(certified) + " certified");
}

Outcome fptas_guarantee() {
  Failures f;
  const std::vector<Rational> epss{Rational(1, 2), Rational(1, 10), Rational(1, 100)};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance inst = seeded_instance(2000 + seed, 12, false);
    const Rational opt = solve_exact(inst).value;
    for (const Rational& eps : epss) {
      const KnapSolution s = solve_fptas(inst, eps);
      f.check(s.value <= (1 + eps) * opt && inst.profit_of(s.chosen) >= 1 && inst.cost_of(s.chosen) == s.value,
              "seed " + std::to_string(seed) + " eps " + eps.str());
    }
  }
  return f.outcome("100 instances x 3 eps");
}

Outcome kc_rounding() {
  Failures f;
  Rational worst = 0;
  CutLoopConfig cfg;
  cfg.p12 = false;
  cfg.kc = true;
  cfg.kc_mode = KcMode::exhaustive;
  cfg.assert_valid = false;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const Instance inst = seeded_instance(3000 + seed, seeded_size(seed, 2, 14), seed % 2 == 0);
    const GapReport rep = run(inst, cfg);
    const Rounding r = round_kc(inst, rep.final_point);
    const Rational lp = inst.cost_of(rep.final_point);
    const std::string tag = "seed " + std::to_string(seed);
    f.check(rep.reason == Termination::no_cut_found || rep.reason == Termination::certified, tag + ": loop stopped early");
    f.check(inst.profit_of(r.chosen) >= 1, tag + ": rounding infeasible");
    f.check(inst.cost_of(r.chosen) == r.cost, tag + ": cost mismatch");
    f.check(r.cost <= 2 * lp, tag + ": cost above twice the LP");
    if (!lp.is_zero()) worst = max(worst, r.cost / lp);
  }
  return f.outcome("500 instances, worst cost/LP " + worst.to_decimal(4));
}

Outcome pitch2_dominance() {
  Failures f;
  std::size_t checked = 0;
  const std::vector<Rational> grid{0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1};
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t n = seeded_size(seed, 2, 6);
    const Instance inst = seeded_instance(4000 + seed, n, seed % 2 == 0);
    std::vector<Inequality> family = pitch12_family(inst);
    const std::vector<IndexSet> feasible = oracle::feasible_sets(inst);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= grid.size();
    for (std::size_t code = 1; code < total; ++code) {
      std::vector<Rational> w(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= grid.size()) w[i] = grid[c % grid.size()];
      const Inequality ineq = Inequality::from_dense(w, 1, Family::user);
      bool valid = true;
      for (const IndexSet& s : feasible) {
        Rational lhs = 0;
        for (std::size_t i : s) lhs += w[i];
        if (lhs < 1) {
          valid = false;
          break;
        }
      }
      if (!valid || compute_pitch(ineq) != 2) continue;
      ++checked;
      f.check(implied_by(ineq, family, n), "seed " + std::to_string(seed) + ": " + ineq.str());
    }
  }
  return f.outcome(std::to_string(checked) + " valid pitch-2 grid inequalities");
}

Outcome pitch_reduction() {
  Failures f;
  std::mt19937_64 rng(7);
  const std::vector<Rational> grid{Rational(1, 6), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                   Rational(2, 3), Rational(3, 4), 1};
  std::size_t made = 0, attempts = 0;
  std::size_t by_pitch[5] = {0, 0, 0, 0, 0};
  while (made < 100 && attempts < 2'000'000) {
    ++attempts;
    const std::size_t t = 2 + made % 3;
    const std::size_t n = t + std::uniform_int_distribution<std::size_t>(0, 8 - t)(rng);
    const Instance inst = oracle::random_instance(rng, n);
    std::vector<Rational> w(n);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    for (Rational& x : w) x = grid[pick(rng)];
    const Inequality ineq = Inequality::from_dense(w, 1, Family::user);
    if (compute_pitch(ineq) != t || !oracle::valid(ineq, inst)) continue;
    ++made;
    ++by_pitch[t];
    const Inequality reduced = pitch_reduce(ineq, t);
    const std::string tag = ineq.str() + " (t=" + std::to_string(t) + ")";
    f.check(is_valid(reduced, inst), tag + ": reduced inequality invalid");
    f.check(compute_pitch(reduced) <= t - 1, tag + ": pitch not reduced");
  }
  f.check(made == 100, "only " + std::to_string(made) + " inequalities generated");
  return f.outcome(std::to_string(made) + " inequalities (t=2:" + std::to_string(by_pitch[2]) +
                   " t=3:" + std::to_string(by_pitch[3]) + " t=4:" + std::to_string(by_pitch[4]) + ")");
}

Outcome fixed_support_value() {
  const Instance inst = Instance::normalize(gaplab::gen_ola(4));
  const Point x = inst.to_sorted(gaplab::ola_point(4, 2));
  IndexSet all;
  for (std::size_t i = 0; i < inst.size(); ++i) all.push_back(i);
  const FixedSupportResult bounded = separate_fixed_support(inst, x, all, 2);
  const FixedSupportResult open = separate_fixed_support(inst, x, all);
  const Inequality stated = Inequality::from_dense(std::vector<Rational>(inst.size(), Rational(1, 2)), 1, Family::user);
  Failures f;
  f.check(bounded.value == Rational(7, 4), "value " + bounded.value.str());
  f.check(stated.lhs(x) == bounded.value, "stated coefficients are not optimal");
  f.check(is_valid(stated, inst) && compute_pitch(stated) <= 2, "stated coefficients not admissible");
  f.check(!bounded.violated, "reported violated");
  return f.outcome("value " + bounded.value.str() + " with pitch <= 2 (no pitch bound: " + open.value.str() + ")");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pitch-3 polytope facts", pitch3_facts},
      {"square-root gap family", sqrt_gap_family},
      {"two-class family and point", ola_family},
      {"3/2 gap with p = c", gap_three_halves},
      {"approximate oracle contract", oracle_contract},
      {"FPTAS guarantee", fptas_guarantee},
      {"KC rounding within 2", kc_rounding},
      {"pitch-2 dominance", pitch2_dominance},
      {"pitch reduction", pitch_reduction},
      {"fixed-support LP value", fixed_support_value},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s [%.2fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
