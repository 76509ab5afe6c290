#include "logfol/integer_matrix.hpp"

#include <ostream>

namespace logfol {

Rational make_rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto parse_integer = [&](const std::string& s) {
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0)
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    return z;
  };

  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const auto denominator = text.substr(slash + 1);
    if (!denominator.empty() && (denominator[0] == '-' || denominator[0] == '+'))
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    return make_rational(parse_integer(text.substr(0, slash)), parse_integer(denominator));
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const auto whole = text.substr(0, dot);
    const auto fraction = text.substr(dot + 1);
    if (fraction.empty() || fraction.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    std::string digits = whole;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
    if (digits.empty()) digits = "0";
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fraction.size());
    Integer numerator = parse_integer(digits + fraction);
    if (negative) numerator = -numerator;
    return make_rational(numerator, scale);
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer vector_gcd(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

Integer vector_height(std::span<const Integer> v) {
  Integer h = 0;
  for (const auto& x : v) {
    Integer a = abs(x);
    if (a > h) h = a;
  }
  return h;
}

IntegerVector multiply_row(std::span<const Integer> v, const IntegerMatrix& a) {
  if (v.size() != a.rows()) throw std::invalid_argument("row vector length mismatch");
  IntegerVector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
  }
  return out;
}

Integer determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntegerVector make_vector(std::initializer_list<long> values) {
  IntegerVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

std::ostream& operator<<(std::ostream& os, const IntegerVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

}  // namespace logfol
