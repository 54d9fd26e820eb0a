#include "minknap/rational.hpp"

#include <cctype>

namespace minknap {

namespace {

// Parses an optionally signed run of decimal digits starting at `pos`.
BigInt parse_integer(std::string_view text, std::size_t& pos, bool allow_sign) {
  const std::size_t start = pos;
  bool negative = false;
  if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  const std::size_t digits_start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == digits_start) {
    throw ParseError("expected digits in rational literal", pos == text.size() ? start : pos);
  }
  BigInt value(std::string(text.substr(digits_start, pos - digits_start)), 10);
  if (negative) value = -value;
  return value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == text.size()) throw ParseError("empty rational literal", pos);
  const BigInt num = parse_integer(text, pos, true);
  BigInt den = 1;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    const std::size_t den_pos = pos;
    den = parse_integer(text, pos, false);
    if (den == 0) throw ParseError("zero denominator", den_pos);
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw ParseError("unexpected character in rational literal", pos);
  return Rational(num, den);
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

BigInt Rational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";
  std::string out = sign() < 0 ? "-" : "";
  BigInt num = value_.get_num();
  if (num < 0) num = -num;
  const BigInt den = value_.get_den();

  // Scale by 10^k so that the integer quotient carries `significant` digits.
  const BigInt int_part = num / den;
  long exponent = 0;  // digits after the decimal point
  if (int_part != 0) {
    const long int_digits = static_cast<long>(int_part.get_str().size());
    exponent = significant - int_digits;
  } else {
    // Count leading zeros after the decimal point.
    BigInt scaled = num;
    long lead = 0;
    while (scaled * 10 < den) {
      scaled *= 10;
      ++lead;
    }
    exponent = lead + significant;
  }
  if (exponent <= 0) return out + int_part.get_str();

  BigInt pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  const BigInt scaled = (num * pow10) / den;
  std::string digits = scaled.get_str();
  if (static_cast<long>(digits.size()) <= exponent) {
    digits.insert(0, static_cast<std::size_t>(exponent) + 1 - digits.size(), '0');
  }
  const std::size_t point = digits.size() - static_cast<std::size_t>(exponent);
  std::string frac = digits.substr(point);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  out += digits.substr(0, point);
  if (!frac.empty()) out += "." + frac;
  return out;
}

long exact_isqrt(long v) {
  if (v < 0) return -1;
  BigInt root;
  const BigInt value(v);
  mpz_sqrt(root.get_mpz_t(), value.get_mpz_t());
  return root * root == value ? root.get_si() : -1;
}

}  // namespace minknap
