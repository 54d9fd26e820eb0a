#include <gtest/gtest.h>

#include <random>

#include "minknap/core.hpp"
#include "minknap/errors.hpp"
#include "minknap/knapdp.hpp"
#include "support/oracles.hpp"

using namespace minknap;

namespace {

Instance by_profits(const std::vector<Rational>& p) {
  RawInstance raw;
  for (std::size_t i = 0; i < p.size(); ++i) raw.items.push_back({"x" + std::to_string(i + 1), 1, p[i]});
  return Instance::normalize(raw);
}

}  // namespace

TEST(Core, PitchExamples) {
  EXPECT_EQ(compute_pitch(Inequality::from_dense(std::vector<Rational>{1, 0, 1, 1, 2, 1, 2}, 3, Family::user)), 3u);
  EXPECT_EQ(compute_pitch(Inequality::unit({0, 1, 2}, 1, Family::pitch1)), 1u);
  EXPECT_EQ(compute_pitch(Inequality({{0, 1}, {1, 1}}, 3, Family::user)), 3u);
}

TEST(Core, PitchMatchesSubsetOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> c(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rational> w;
    for (int i = 0; i < 6; ++i) w.emplace_back(c(rng), 2);
    if (std::all_of(w.begin(), w.end(), [](const Rational& r) { return r.is_zero(); })) continue;
    const Inequality ineq = Inequality::from_dense(w, Rational(c(rng) + 1, 2), Family::user);
    EXPECT_EQ(compute_pitch(ineq), oracle::pitch(ineq)) << ineq.str();
  }
}

TEST(Core, ValidityMatchesEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = oracle::random_instance(rng, 6);
    std::vector<Rational> w;
    for (std::size_t i = 0; i < inst.size(); ++i) w.emplace_back(c(rng));
    if (std::all_of(w.begin(), w.end(), [](const Rational& r) { return r.is_zero(); })) continue;
    const Inequality ineq = Inequality::from_dense(w, Rational(c(rng) + 1), Family::user);
    EXPECT_EQ(is_valid(ineq, inst), oracle::valid(ineq, inst));
  }
}

TEST(Core, KnapsackCover) {
  const Instance inst = by_profits({Rational(3, 5), Rational(3, 5), Rational(3, 5)});
  const Inequality kc = kc_inequality(inst, {0});
  EXPECT_EQ(kc.rhs(), Rational(2, 5));
  EXPECT_EQ(kc.dense(3), (std::vector<Rational>{0, Rational(2, 5), Rational(2, 5)}));
  EXPECT_TRUE(oracle::valid(kc, inst));
  EXPECT_THROW(kc_inequality(inst, {0, 1}), PreconditionError);
}

TEST(Core, Pitch2CanonicalExample) {
  const Instance inst = by_profits({Rational(1, 8), Rational(1, 2), Rational(3, 4)});
  const Pitch2Canonical s = pitch2_structure(inst, {0, 1});
  EXPECT_EQ(s.beta, Rational(1, 4));
  EXPECT_EQ(s.light, (IndexSet{0}));
  EXPECT_EQ(s.heavy, (IndexSet{1}));
  const Inequality cut = pitch2_canonical(inst, {0, 1});
  EXPECT_EQ(cut.str(), "x1 + 2 x2 >= 2");
  EXPECT_TRUE(oracle::valid(cut, inst));
  EXPECT_EQ(compute_pitch(cut), 2u);
  EXPECT_THROW(pitch2_structure(inst, {0}), PreconditionError);
  EXPECT_THROW(pitch2_structure(by_profits({1, 1}), {0, 1}), PreconditionError);
}

TEST(Core, CanonicalPitch2AlwaysValid) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = oracle::random_instance(rng, 6);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      const IndexSet I = oracle::subset(mask, 6);
      if (I.size() < 2 || beta_of(inst, I) <= 0) continue;
      const Pitch2Canonical s = [&] {
        try {
          return pitch2_structure(inst, I);
        } catch (const PreconditionError&) {
          return Pitch2Canonical{};
        }
      }();
      if (s.support.empty()) continue;
      EXPECT_TRUE(oracle::valid(pitch2_canonical(inst, I), inst));
    }
  }
}

TEST(Core, PitchReduceKeepsValidityAndLowersPitch) {
  const Instance inst = by_profits({Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  const Inequality three = Inequality::unit({0, 1, 2, 3}, 2, Family::user);  // pitch 2
  ASSERT_TRUE(is_valid(three, inst));
  const Inequality r = pitch_reduce(three, 2);
  EXPECT_EQ(r.support_size(), 3u);
  EXPECT_EQ(r.rhs(), Rational(1, 2));
  EXPECT_TRUE(is_valid(r, inst));
  EXPECT_LE(compute_pitch(r), 1u);
  EXPECT_THROW(pitch_reduce(three, 1), PreconditionError);
}

TEST(Core, MaxKnapReduction) {
  const std::vector<Rational> v{6, 10, 12};
  const std::vector<Rational> w{Rational(1, 5), Rational(2, 5), Rational(3, 5)};
  const MaxKnapReduction red = reduce_maxknap(v, w);
  const KnapSolution min_sol = solve_exact(red.instance);
  const IndexSet max_sol = red.to_max_solution(red.instance.to_input(min_sol.chosen));
  EXPECT_EQ(max_sol, (IndexSet{1, 2}));
  EXPECT_EQ(min_sol.value, 6);
  EXPECT_THROW(reduce_maxknap(v, std::vector<Rational>{Rational(1, 5), Rational(1, 5), Rational(1, 5)}),
               PreconditionError);
}
