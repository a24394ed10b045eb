#include "qes/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace qes {

Rational parse_rational(const std::string &text) {
  if (text.empty())
    throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Rational q(mpz_class(text.substr(0, slash), 10), mpz_class(text.substr(slash + 1), 10));
    if (q.get_den() == 0)
      throw std::invalid_argument("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  // decimal: [sign] digits [. digits] [e exp]
  std::string mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    exponent = std::stol(text.substr(e + 1));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  for (char ch : mantissa) {
    if (ch == '.')
      continue;
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    digits.push_back(ch);
  }
  if (digits.empty())
    throw std::invalid_argument("malformed rational literal '" + text + "'");
  if (auto dot = mantissa.find('.'); dot != std::string::npos)
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  Rational q{mpz_class(digits, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0)
    q /= Rational(scale);
  else
    q *= Rational(scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::ostream &operator<<(std::ostream &os, const ComplexRational &z) {
  return os << '(' << z.re << ", " << z.im << ')';
}

void BivariatePolynomial::add_term(int x_deg, int d_deg, const Rational &coeff) {
  if (coeff == 0)
    return;
  auto [it, inserted] = terms_.try_emplace({x_deg, d_deg}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Rational BivariatePolynomial::coefficient(int x_deg, int d_deg) const {
  auto it = terms_.find({x_deg, d_deg});
  return it == terms_.end() ? Rational(0) : it->second;
}

int BivariatePolynomial::degree_x() const {
  int deg = -1;
  for (const auto &[e, _] : terms_)
    deg = std::max(deg, e.first);
  return deg;
}

RationalPolynomial BivariatePolynomial::coefficient_of_x(int k) const {
  RationalPolynomial out;
  for (const auto &[e, coeff] : terms_)
    if (e.first == k)
      out += RationalPolynomial::monomial(e.second, coeff);
  return out;
}

RationalPolynomial BivariatePolynomial::at_d(const Rational &d_value) const {
  RationalPolynomial out;
  for (int k = 0; k <= degree_x(); ++k)
    out += RationalPolynomial::monomial(k, coefficient_of_x(k).evaluate(d_value));
  return out;
}

BivariatePolynomial &BivariatePolynomial::operator+=(const BivariatePolynomial &o) {
  for (const auto &[e, coeff] : o.terms_)
    add_term(e.first, e.second, coeff);
  return *this;
}

BivariatePolynomial &BivariatePolynomial::operator-=(const BivariatePolynomial &o) {
  for (const auto &[e, coeff] : o.terms_)
    add_term(e.first, e.second, -coeff);
  return *this;
}

BivariatePolynomial operator*(const BivariatePolynomial &a, const BivariatePolynomial &b) {
  BivariatePolynomial out;
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_)
      out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
  return out;
}

namespace {

std::string monomial_string(const std::vector<std::pair<std::string, int>> &factors) {
  std::string s;
  for (const auto &[name, power] : factors) {
    if (power == 0)
      continue;
    if (!s.empty())
      s += '*';
    s += name;
    if (power > 1)
      s += '^' + std::to_string(power);
  }
  return s;
}

// Appends `coeff * mono` to `out` with a leading sign separator.
void append_term(std::string &out, const Rational &coeff, const std::string &mono) {
  Rational mag = abs(coeff);
  bool neg = coeff < 0;
  if (out.empty())
    out += neg ? "-" : "";
  else
    out += neg ? " - " : " + ";
  if (mono.empty())
    out += mag.get_str();
  else if (mag == 1)
    out += mono;
  else
    out += mag.get_str() + "*" + mono;
}

} // namespace

std::string BivariatePolynomial::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    append_term(out, it->second, monomial_string({{"X", it->first.first}, {"d", it->first.second}}));
  return out;
}

std::string BivariatePolynomial::to_table_string(int N) const {
  if (terms_.empty())
    return "0";
  const Rational shift(N + 3);
  // (h + shift)^m as a polynomial in h
  auto h_power = [&](int m) {
    RationalPolynomial base(std::vector<Rational>{shift, Rational(1)});
    RationalPolynomial acc(Rational(1));
    for (int i = 0; i < m; ++i)
      acc *= base;
    return acc;
  };
  std::string out;
  for (int k = degree_x(); k >= 0; --k) {
    RationalPolynomial in_d = coefficient_of_x(k);
    if (in_d.is_zero())
      continue;
    // coefficient(X^k) = even(h) + d * odd(h)
    RationalPolynomial even, odd;
    for (int j = 0; j <= in_d.degree(); ++j) {
      if (in_d[j] == 0)
        continue;
      RationalPolynomial piece = h_power(j / 2) * RationalPolynomial(in_d[j]);
      (j % 2 == 0 ? even : odd) += piece;
    }
    std::vector<std::pair<Rational, std::string>> inner;
    for (int j = std::max(even.degree(), odd.degree()); j >= 0; --j) {
      if (odd[j] != 0)
        inner.emplace_back(odd[j], monomial_string({{"h", j}, {"d", 1}}));
      if (even[j] != 0)
        inner.emplace_back(even[j], monomial_string({{"h", j}}));
    }
    std::string xmono = monomial_string({{"X", k}});
    if (inner.size() == 1) {
      const auto &[coeff, mono] = inner.front();
      std::string joined = mono.empty() ? xmono : (xmono.empty() ? mono : mono + "*" + xmono);
      append_term(out, coeff, joined);
    } else {
      std::string group;
      for (const auto &[coeff, mono] : inner)
        append_term(group, coeff, mono);
      if (!out.empty())
        out += " + ";
      out += "(" + group + ")";
      if (!xmono.empty())
        out += "*" + xmono;
    }
  }
  return out;
}

std::string to_string(const RationalPolynomial &p, const std::string &var) {
  if (p.is_zero())
    return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k)
    if (p[k] != 0)
      append_term(out, p[k], monomial_string({{var, k}}));
  return out;
}

} // namespace qes
