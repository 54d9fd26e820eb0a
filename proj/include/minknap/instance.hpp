#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "minknap/rational.hpp"

namespace minknap {

/// Sorted list of item indices.
using IndexSet = std::vector<std::size_t>;

struct RawItem {
  std::string label;
  Rational cost;
  Rational profit;

  friend bool operator==(const RawItem&, const RawItem&) = default;
};

/// An instance as written by a user: arbitrary positive threshold, items in
/// input order, profits not yet scaled or capped.
struct RawInstance {
  std::vector<RawItem> items;
  Rational threshold = 1;

  friend bool operator==(const RawInstance&, const RawInstance&) = default;
};

/// A point of [0,1]^n.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> values);
  Point(std::initializer_list<Rational> values) : Point(std::vector<Rational>(values)) {}

  static Point zeros(std::size_t n) { return Point(std::vector<Rational>(n, Rational(0))); }
  static Point ones(std::size_t n) { return Point(std::vector<Rational>(n, Rational(1))); }

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  std::span<const Rational> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  std::string str() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Rational> values_;
};

/// Normalized min-knapsack instance: min c.x s.t. p.x >= 1, x binary, with
/// 0 <= p_1 <= ... <= p_n <= 1 and every p_i = r_i / q.
///
/// All indices used by the rest of the library refer to this sorted order.
/// `original_index(i)` maps back to the position in the raw input.
class Instance {
 public:
  /// Scales profits by the threshold, caps them at 1 and sorts ascending
  /// (ties by input position). Throws PreconditionError on a nonpositive
  /// threshold or cost or a negative profit, Infeasible when sum p < 1.
  static Instance normalize(const RawInstance& raw);

  std::size_t size() const { return profits_.size(); }
  const std::vector<Rational>& profits() const { return profits_; }
  const std::vector<Rational>& costs() const { return costs_; }
  const Rational& profit(std::size_t i) const { return profits_[i]; }
  const Rational& cost(std::size_t i) const { return costs_[i]; }

  /// Least common denominator of the profits.
  const BigInt& q() const { return q_; }
  /// Integer profits with p_i = r_i / q.
  const std::vector<BigInt>& r() const { return r_; }
  const BigInt& r(std::size_t i) const { return r_[i]; }
  /// Sum of all r_i.
  const BigInt& r_total() const { return r_total_; }

  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::size_t original_index(std::size_t i) const { return original_[i]; }
  /// Inverse of original_index.
  std::size_t sorted_index(std::size_t input_position) const { return sorted_[input_position]; }

  /// Reorders a vector given in input order into sorted order.
  Point to_sorted(const Point& input_order) const;
  std::vector<Rational> to_sorted(std::span<const Rational> input_order) const;
  /// Reorders a sorted-order vector back into input order.
  Point to_input(const Point& sorted_order) const;
  IndexSet to_input(const IndexSet& sorted_order) const;

  /// Normalized content in input order with threshold 1.
  RawInstance as_raw() const;

  Rational profit_of(const IndexSet& s) const;
  Rational cost_of(const IndexSet& s) const;
  Rational cost_of(const Point& x) const;
  Rational profit_of(const Point& x) const;
  /// Sum of r_i over `s`.
  BigInt r_of(const IndexSet& s) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Rational> profits_;
  std::vector<Rational> costs_;
  BigInt q_ = 1;
  std::vector<BigInt> r_;
  BigInt r_total_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::size_t> original_;
  std::vector<std::size_t> sorted_;
};

/// Characteristic vector of `s` in [0,1]^n.
Point char_vector(const IndexSet& s, std::size_t n);

/// Complement of `s` inside [n].
IndexSet complement(const IndexSet& s, std::size_t n);

}  // namespace minknap
