#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "minknap/errors.hpp"
#include "minknap/gaplab.hpp"
#include "minknap/sep.hpp"
#include "support/oracles.hpp"

using namespace minknap;

namespace {

Instance by_profits(const std::vector<Rational>& p) {
  RawInstance raw;
  for (std::size_t i = 0; i < p.size(); ++i) raw.items.push_back({"x" + std::to_string(i + 1), 1, p[i]});
  return Instance::normalize(raw);
}

Instance tenths() { return by_profits({Rational(3, 10), Rational(4, 10), Rational(5, 10), Rational(8, 10)}); }

std::vector<Inequality> whole_family(const Instance& inst) {
  std::vector<Inequality> f = enumerate_pitch1(inst);
  for (Inequality& c : enumerate_pitch2(inst)) f.push_back(std::move(c));
  std::vector<Term> row;
  for (std::size_t i = 0; i < inst.size(); ++i) row.push_back({i, inst.profit(i)});
  f.emplace_back(std::move(row), 1, Family::knapsack_row);
  return f;
}

}  // namespace

TEST(Pitch12, WorkedExample) {
  const Instance inst = tenths();
  const Point x{Rational(0), Rational(0), Rational(1, 2), Rational(2, 5)};
  const SeparationResult r = separate_pitch12(inst, x, Rational(1, 100), Exactness::exact);
  ASSERT_TRUE(is_violated(r));
  const Violated& v = std::get<Violated>(r);
  EXPECT_EQ(v.cut.str(), "x1 + x4 >= 1");
  EXPECT_EQ(v.violation, Rational(3, 5));
  EXPECT_EQ(v.alpha, Rational(1, 10));
  EXPECT_EQ(v.cut.family(), Family::pitch1);
}

TEST(Pitch12, ZeroAndOnePoints) {
  const Instance inst = by_profits({0, Rational(1, 4), Rational(1, 2), Rational(3, 4)});
  const SeparationResult zero = separate_pitch12(inst, Point::zeros(4), Rational(1, 10), Exactness::exact);
  ASSERT_TRUE(is_violated(zero));
  EXPECT_EQ(std::get<Violated>(zero).cut.support(), (IndexSet{1, 2, 3}));
  for (Exactness mode : {Exactness::exact, Exactness::fptas}) {
    const SeparationResult one = separate_pitch12(inst, Point::ones(4), Rational(1, 10), mode);
    ASSERT_FALSE(is_violated(one));
    EXPECT_EQ(std::get<Certified>(one).ybar, Point::ones(4));
  }
}

TEST(Pitch12, LevelsAreDistinctAndCapped) {
  const Instance inst = tenths();
  EXPECT_EQ(pitch2_levels(inst),
            (std::vector<Rational>{Rational(4, 10), Rational(5, 10), Rational(6, 10), Rational(9, 10)}));
  EXPECT_EQ(pitch2_levels(by_profits({1, 1})), std::vector<Rational>{});
}

TEST(Pitch12, SoundCompleteAndSandwiched) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const Instance inst = oracle::random_instance(rng, 2 + trial % 7);
    const std::vector<Inequality> family = whole_family(inst);
    const Point x = oracle::random_point(rng, inst.size(), 6);
    for (Exactness mode : {Exactness::exact, Exactness::fptas}) {
      const Rational eps = trial % 2 ? Rational(1, 2) : Rational(1, 10);
      const SeparationResult r = separate_pitch12(inst, x, eps, mode);
      if (const auto* v = std::get_if<Violated>(&r)) {
        EXPECT_TRUE(oracle::valid(v->cut, inst)) << v->cut.str();
        EXPECT_FALSE(v->cut.satisfied_by(x));
        EXPECT_EQ(v->violation, v->cut.violation(x));
        continue;
      }
      const Point& y = std::get<Certified>(r).ybar;
      for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_LE(x[i], y[i]);
        EXPECT_LE(y[i], (1 + eps) * x[i]);
      }
      if (mode == Exactness::exact) EXPECT_EQ(y, x);
      for (const Inequality& f : family) EXPECT_TRUE(f.satisfied_by(y)) << f.str();
    }
  }
}

TEST(Pitch12, LevelDichotomy) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = oracle::random_instance(rng, 3 + trial % 5);
    const Point x = oracle::random_point(rng, inst.size(), 4);
    const std::size_t n = inst.size();
    for (const Rational& alpha : pitch2_levels(inst)) {
      const KnapSolution z = solve_palpha(inst, x, alpha, SolverChoice::exact());
      if (z.value < 2) {
        const auto cut = cut_from_palpha(inst, z.chosen, false, x);
        ASSERT_TRUE(cut.has_value());
        EXPECT_FALSE(cut->satisfied_by(x));
        continue;
      }
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const IndexSet I = oracle::subset(mask, n);
        if (I.size() < 2 || beta_of(inst, I) != alpha) continue;
        bool light = false;
        for (std::size_t i : I) light = light || inst.profit(i) < alpha;
        if (!light) continue;
        EXPECT_TRUE(pitch2_canonical(inst, I).satisfied_by(x));
      }
    }
  }
}

TEST(Kc, Examples) {
  const Instance inst = by_profits({Rational(3, 5), Rational(3, 5), Rational(3, 5)});
  const auto v = separate_kc(inst, Point{Rational(1), Rational(1, 10), Rational(0)}, KcMode::heuristic);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->cut.rhs(), Rational(2, 5));
  EXPECT_TRUE(oracle::valid(v->cut, inst));
  for (KcMode mode : {KcMode::heuristic, KcMode::exhaustive}) {
    EXPECT_FALSE(separate_kc(inst, Point::ones(3), mode).has_value());
  }
  EXPECT_FALSE(separate_kc(inst, char_vector({0, 2}, 3), KcMode::exhaustive).has_value());
  EXPECT_THROW(separate_kc(Instance::normalize(gaplab::gen_ola(16)), Point::ones(32), KcMode::exhaustive),
               PreconditionError);
}

TEST(Kc, ExhaustiveFindsTheMostViolated) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 150; ++trial) {
    const Instance inst = oracle::random_instance(rng, 2 + trial % 8);
    const Point x = oracle::random_point(rng, inst.size());
    const Rational best = oracle::best_kc_violation(inst, x);
    const auto v = separate_kc(inst, x, KcMode::exhaustive);
    if (best == 0) {
      EXPECT_FALSE(v.has_value());
    } else {
      ASSERT_TRUE(v.has_value());
      EXPECT_EQ(v->violation, best);
      EXPECT_TRUE(oracle::valid(v->cut, inst));
    }
    if (const auto h = separate_kc(inst, x, KcMode::heuristic)) {
      EXPECT_LE(h->violation, best);
      EXPECT_TRUE(oracle::valid(h->cut, inst));
    }
  }
}

TEST(FixedSupport, OlaPointWithPitchBound) {
  const Instance inst = Instance::normalize(gaplab::gen_ola(4));
  const Point x = inst.to_sorted(gaplab::ola_point(4, 2));
  IndexSet all(inst.size());
  std::iota(all.begin(), all.end(), 0);
  const FixedSupportResult r = separate_fixed_support(inst, x, all, 2);
  EXPECT_EQ(r.value, Rational(7, 4));
  EXPECT_FALSE(r.violated);
  // the stated coefficients are optimal too
  std::vector<Rational> half(inst.size(), Rational(1, 2));
  EXPECT_EQ(Inequality::from_dense(half, 1, Family::user).lhs(x), Rational(7, 4));
}

TEST(FixedSupport, OlaPointWithoutPitchBound) {
  const Instance inst = Instance::normalize(gaplab::gen_ola(4));
  const Point x = inst.to_sorted(gaplab::ola_point(4, 2));
  IndexSet all(inst.size());
  std::iota(all.begin(), all.end(), 0);
  const FixedSupportResult r = separate_fixed_support(inst, x, all);
  EXPECT_EQ(r.value, Rational(5, 4));
  EXPECT_FALSE(r.violated);
}

TEST(FixedSupport, SingleHeavyItem) {
  const Instance inst = by_profits({Rational(1, 4), 1});
  const FixedSupportResult r = separate_fixed_support(inst, Point{Rational(1), Rational(1, 3)}, {1});
  EXPECT_EQ(r.alpha, (std::vector<Rational>{0, 1}));
  EXPECT_EQ(r.value, Rational(1, 3));
  EXPECT_TRUE(r.violated);
  EXPECT_THROW(separate_fixed_support(inst, Point::ones(2), {0}), PreconditionError);
}

TEST(FixedSupport, OptimumCoversEveryMassiveSet) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 80; ++trial) {
    const Instance inst = oracle::random_instance(rng, 3 + trial % 5);
    const std::size_t n = inst.size();
    const Point x = oracle::random_point(rng, n, 5);
    for (std::uint32_t mask = 1; mask < (1u << n); mask += 3) {
      const IndexSet I = oracle::subset(mask, n);
      const Rational beta = beta_of(inst, I);
      if (beta <= 0) continue;
      const FixedSupportResult r = separate_fixed_support(inst, x, I);
      for (std::uint32_t sub = 0; sub < (1u << n); ++sub) {
        if ((sub & mask) != sub) continue;
        const IndexSet J = oracle::subset(sub, n);
        if (inst.profit_of(J) < beta) continue;
        Rational sum = 0;
        for (std::size_t j : J) sum += r.alpha[j];
        EXPECT_GE(sum, 1);
      }
      Rational all_ones = 0;
      for (std::size_t i : I) all_ones += r.alpha[i];
      EXPECT_GE(all_ones, 1);
      if (r.violated) {
        EXPECT_TRUE(oracle::valid(*r.cut, inst));
        EXPECT_FALSE(r.cut->satisfied_by(x));
      }
    }
  }
}

TEST(Enumerate, Pitch1Examples) {
  // each item alone is feasible, so only the pair is hit by every feasible set
  const auto ones = enumerate_pitch1(by_profits({1, 1}));
  ASSERT_EQ(ones.size(), 1u);
  EXPECT_EQ(ones.front().str(), "x1 + x2 >= 1");
  const auto halves = enumerate_pitch1(by_profits({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  ASSERT_EQ(halves.size(), 3u);
  for (const Inequality& c : halves) EXPECT_EQ(c.support_size(), 2u);
  EXPECT_EQ(enumerate_pitch1(by_profits({1})).front().str(), "x1 >= 1");
}

TEST(Enumerate, Pitch2Examples) {
  EXPECT_TRUE(enumerate_pitch2(by_profits({1, 1})).empty());
  const auto halves = enumerate_pitch2(by_profits({Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  ASSERT_EQ(halves.size(), 1u);
  EXPECT_EQ(halves.front().str(), "x1 + x2 + x3 >= 2");
  const auto mixed = enumerate_pitch2(by_profits({Rational(1, 8), Rational(1, 2), Rational(3, 4)}));
  EXPECT_NE(std::find_if(mixed.begin(), mixed.end(), [](const Inequality& c) { return c.str() == "x1 + 2 x2 >= 2"; }),
            mixed.end());
}

TEST(Enumerate, Pitch1MatchesOracle) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = oracle::random_instance(rng, 1 + trial % 9);
    std::vector<IndexSet> got;
    for (const Inequality& c : enumerate_pitch1(inst)) got.push_back(c.support());
    std::sort(got.begin(), got.end());
    std::vector<IndexSet> want = oracle::minimal_pitch1_sets(inst);
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
  }
}

TEST(ImpliedBy, Examples) {
  const Inequality member = Inequality::unit({0, 1}, 1, Family::pitch1);
  EXPECT_TRUE(implied_by(member, {member}, 3));
  const Inequality doubled({{0, 1}, {1, 1}, {2, 2}}, 2, Family::pitch2_canonical);
  const Inequality halved({{0, Rational(1, 2)}, {1, Rational(1, 2)}, {2, 1}}, 1, Family::user);
  EXPECT_TRUE(implied_by(halved, {doubled}, 3));
  EXPECT_FALSE(implied_by(Inequality::unit({0}, 1, Family::user), {member}, 3));
  EXPECT_FALSE(implied_by(member, {}, 3));
}

TEST(ImpliedBy, TwoMemberCombination) {
  // w1 x1 + (1 - w1)(x2 + x3) >= 1 from x1 + x2 + x3 >= 2 (times w1) and
  // x2 + x3 >= 1 (times 1 - 2 w1), w1 = 1/4.
  const Instance inst = by_profits({Rational(1, 8), Rational(1, 4), Rational(3, 4)});
  const Inequality eq7 = pitch2_canonical(inst, {0, 1, 2});
  const Inequality eq10 = Inequality::unit({1, 2}, 1, Family::pitch1);
  ASSERT_TRUE(oracle::valid(eq10, inst));
  const Rational w1(1, 4);
  const Inequality target({{0, w1}, {1, 1 - w1}, {2, 1 - w1}}, 1, Family::user);
  EXPECT_TRUE(implied_by(target, {eq7, eq10}, 3));
  EXPECT_FALSE(implied_by(target, {eq7}, 3));
}
