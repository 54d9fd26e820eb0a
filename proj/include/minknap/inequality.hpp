#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minknap/instance.hpp"
#include "minknap/rational.hpp"

namespace minknap {

enum class Family { pitch1, pitch2_canonical, kc, fixed_support, user, knapsack_row };

std::string_view to_string(Family f);

struct Term {
  std::size_t index;
  Rational coef;

  friend bool operator==(const Term&, const Term&) = default;
};

/// sum_{i in T} w_i x_i >= beta with every stored w_i > 0 and beta > 0.
class Inequality {
 public:
  /// Drops zero coefficients, sorts by index and merges repeated indices.
  /// Throws PreconditionError on a negative coefficient or beta <= 0.
  Inequality(std::vector<Term> terms, Rational rhs, Family family);

  /// Dense coefficient vector; zeros are dropped.
  static Inequality from_dense(std::span<const Rational> w, Rational rhs, Family family);
  /// sum_{i in s} x_i >= rhs.
  static Inequality unit(const IndexSet& s, Rational rhs, Family family);

  const std::vector<Term>& terms() const { return terms_; }
  const Rational& rhs() const { return rhs_; }
  Family family() const { return family_; }
  std::size_t support_size() const { return terms_.size(); }
  IndexSet support() const;
  /// Coefficient of x_i, zero when i is outside the support.
  Rational coef(std::size_t i) const;
  std::vector<Rational> dense(std::size_t n) const;

  Rational lhs(std::span<const Rational> x) const;
  Rational lhs(const Point& x) const { return lhs(x.values()); }
  bool satisfied_by(const Point& x) const { return lhs(x) >= rhs_; }
  /// (beta - w.x) / beta: positive iff violated, comparable across cuts of
  /// different scale.
  Rational violation(const Point& x) const;

  /// Same inequality scaled so that the right-hand side is 1.
  Inequality normalized() const;
  Inequality with_family(Family f) const;

  /// Canonical text of the rhs-normalized inequality; equal keys mean the
  /// two inequalities are positive multiples of each other.
  std::string key() const;

  /// "1/2 x1 + x4 >= 1" using `name(i)` for variable i.
  std::string str(const std::function<std::string(std::size_t)>& name) const;
  /// Variables printed as x<k> with k the 1-based input position.
  std::string str(const Instance& inst) const;
  /// Variables printed as x<i+1> in sorted order.
  std::string str() const;

  friend bool operator==(const Inequality& a, const Inequality& b) {
    return a.terms_ == b.terms_ && a.rhs_ == b.rhs_;
  }

 private:
  std::vector<Term> terms_;
  Rational rhs_;
  Family family_;
};

}  // namespace minknap
