#include "minknap/inequality.hpp"

#include <algorithm>
#include <sstream>

#include "minknap/errors.hpp"

namespace minknap {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::pitch1: return "pitch1";
    case Family::pitch2_canonical: return "pitch2-canonical";
    case Family::kc: return "kc";
    case Family::fixed_support: return "fixed-support";
    case Family::user: return "user";
    case Family::knapsack_row: return "knapsack-row";
  }
  return "unknown";
}

Inequality::Inequality(std::vector<Term> terms, Rational rhs, Family family)
    : rhs_(std::move(rhs)), family_(family) {
  if (rhs_ <= 0) throw PreconditionError("inequality rhs must be positive, got " + rhs_.str());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.index < b.index; });
  for (Term& t : terms) {
    if (t.coef < 0) throw PreconditionError("negative coefficient on x" + std::to_string(t.index + 1));
    if (!terms_.empty() && terms_.back().index == t.index) {
      terms_.back().coef += t.coef;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coef.is_zero(); });
}

Inequality Inequality::from_dense(std::span<const Rational> w, Rational rhs, Family family) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w[i].is_zero()) terms.push_back({i, w[i]});
  }
  return Inequality(std::move(terms), std::move(rhs), family);
}

Inequality Inequality::unit(const IndexSet& s, Rational rhs, Family family) {
  std::vector<Term> terms;
  terms.reserve(s.size());
  for (std::size_t i : s) terms.push_back({i, Rational(1)});
  return Inequality(std::move(terms), std::move(rhs), family);
}

IndexSet Inequality::support() const {
  IndexSet s;
  s.reserve(terms_.size());
  for (const Term& t : terms_) s.push_back(t.index);
  return s;
}

Rational Inequality::coef(std::size_t i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const Term& t, std::size_t idx) { return t.index < idx; });
  return it != terms_.end() && it->index == i ? it->coef : Rational(0);
}

std::vector<Rational> Inequality::dense(std::size_t n) const {
  std::vector<Rational> w(n, Rational(0));
  for (const Term& t : terms_) {
    if (t.index >= n) throw PreconditionError("inequality index outside [n]");
    w[t.index] = t.coef;
  }
  return w;
}

Rational Inequality::lhs(std::span<const Rational> x) const {
  Rational total = 0;
  for (const Term& t : terms_) {
    if (t.index >= x.size()) throw PreconditionError("point dimension too small for inequality");
    if (!x[t.index].is_zero()) total += t.coef * x[t.index];
  }
  return total;
}

Rational Inequality::violation(const Point& x) const { return (rhs_ - lhs(x)) / rhs_; }

Inequality Inequality::normalized() const {
  std::vector<Term> terms = terms_;
  for (Term& t : terms) t.coef /= rhs_;
  return Inequality(std::move(terms), Rational(1), family_);
}

Inequality Inequality::with_family(Family f) const {
  Inequality copy = *this;
  copy.family_ = f;
  return copy;
}

std::string Inequality::key() const {
  std::ostringstream os;
  for (const Term& t : terms_) os << t.index << ':' << (t.coef / rhs_).str() << ' ';
  return os.str();
}

std::string Inequality::str(const std::function<std::string(std::size_t)>& name) const {
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (t.coef != 1) os << t.coef.str() << ' ';
    os << name(t.index);
  }
  if (first) os << '0';
  os << " >= " << rhs_.str();
  return os.str();
}

std::string Inequality::str(const Instance& inst) const {
  // Print in input order so that output lines up with the instance file.
  std::vector<Term> terms;
  for (const Term& t : terms_) terms.push_back({inst.original_index(t.index), t.coef});
  const Inequality reordered(std::move(terms), rhs_, family_);
  return reordered.str();
}

std::string Inequality::str() const {
  return str([](std::size_t i) { return "x" + std::to_string(i + 1); });
}

}  // namespace minknap
