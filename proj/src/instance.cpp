#include "minknap/instance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "minknap/errors.hpp"

namespace minknap {

Point::Point(std::vector<Rational> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0 || values_[i] > 1) {
      throw PreconditionError("point coordinate " + std::to_string(i + 1) + " = " +
                              values_[i].str() + " outside [0,1]");
    }
  }
}

std::string Point::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ", ";
    os << values_[i];
  }
  os << ')';
  return os.str();
}

Instance Instance::normalize(const RawInstance& raw) {
  if (raw.threshold <= 0) throw PreconditionError("threshold must be positive");
  const std::size_t n = raw.items.size();
  if (n == 0) throw Infeasible("instance has no items");

  std::vector<Rational> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RawItem& item = raw.items[i];
    if (item.cost <= 0) throw PreconditionError("cost of item '" + item.label + "' must be positive");
    if (item.profit < 0) throw PreconditionError("profit of item '" + item.label + "' is negative");
    scaled[i] = min(item.profit / raw.threshold, Rational(1));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scaled[a] < scaled[b]; });

  Instance inst;
  inst.profits_.reserve(n);
  inst.costs_.reserve(n);
  inst.labels_.reserve(n);
  inst.original_ = order;
  inst.sorted_.assign(n, 0);
  Rational total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    inst.profits_.push_back(scaled[i]);
    inst.costs_.push_back(raw.items[i].cost);
    inst.labels_.push_back(raw.items[i].label);
    inst.sorted_[i] = k;
    total += scaled[i];
  }
  if (total < 1) throw Infeasible("instance is infeasible: total profit " + total.str() + " < 1");

  BigInt q = 1;
  for (const Rational& p : inst.profits_) {
    const BigInt den = p.den();
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), den.get_mpz_t());
  }
  inst.q_ = q;
  inst.r_.reserve(n);
  for (const Rational& p : inst.profits_) {
    BigInt r = p.num() * (q / p.den());
    inst.r_total_ += r;
    inst.r_.push_back(std::move(r));
  }
  return inst;
}

Point Instance::to_sorted(const Point& input_order) const {
  return Point(to_sorted(input_order.values()));
}

std::vector<Rational> Instance::to_sorted(std::span<const Rational> input_order) const {
  if (input_order.size() != size()) throw PreconditionError("dimension mismatch");
  std::vector<Rational> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = input_order[original_[k]];
  return out;
}

Point Instance::to_input(const Point& sorted_order) const {
  if (sorted_order.size() != size()) throw PreconditionError("dimension mismatch");
  std::vector<Rational> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[original_[k]] = sorted_order[k];
  return Point(std::move(out));
}

IndexSet Instance::to_input(const IndexSet& sorted_order) const {
  IndexSet out;
  out.reserve(sorted_order.size());
  for (std::size_t k : sorted_order) out.push_back(original_[k]);
  std::sort(out.begin(), out.end());
  return out;
}

RawInstance Instance::as_raw() const {
  RawInstance raw;
  raw.threshold = 1;
  raw.items.resize(size());
  for (std::size_t k = 0; k < size(); ++k) {
    raw.items[original_[k]] = RawItem{labels_[k], costs_[k], profits_[k]};
  }
  return raw;
}

Rational Instance::profit_of(const IndexSet& s) const {
  Rational total = 0;
  for (std::size_t i : s) total += profits_[i];
  return total;
}

Rational Instance::cost_of(const IndexSet& s) const {
  Rational total = 0;
  for (std::size_t i : s) total += costs_[i];
  return total;
}

Rational Instance::cost_of(const Point& x) const {
  Rational total = 0;
  for (std::size_t i = 0; i < size(); ++i) total += costs_[i] * x[i];
  return total;
}

Rational Instance::profit_of(const Point& x) const {
  Rational total = 0;
  for (std::size_t i = 0; i < size(); ++i) total += profits_[i] * x[i];
  return total;
}

BigInt Instance::r_of(const IndexSet& s) const {
  BigInt total = 0;
  for (std::size_t i : s) total += r_[i];
  return total;
}

Point char_vector(const IndexSet& s, std::size_t n) {
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t i : s) {
    if (i >= n) throw PreconditionError("index outside [n]");
    x[i] = 1;
  }
  return Point(std::move(x));
}

IndexSet complement(const IndexSet& s, std::size_t n) {
  std::vector<char> in(n, 0);
  for (std::size_t i : s) in[i] = 1;
  IndexSet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

}  // namespace minknap
