#pragma once

#include "qes/rational.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace qes {

/// Dense univariate polynomial, coefficients indexed by degree. Trailing
/// zero coefficients are never stored, so the zero polynomial is empty.
template <class T> class Polynomial {
public:
  Polynomial() = default;
  Polynomial(T constant) : coeffs_{std::move(constant)} { trim(); }
  Polynomial(int constant) : Polynomial(T(constant)) {}
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// x^k scaled by `coeff`.
  static Polynomial monomial(int k, T coeff = T(1)) {
    std::vector<T> c(static_cast<std::size_t>(k) + 1, T{});
    c.back() = std::move(coeff);
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T> &coefficients() const { return coeffs_; }

  T operator[](int k) const {
    if (k < 0 || k > degree())
      return T{};
    return coeffs_[static_cast<std::size_t>(k)];
  }

  template <class U> U evaluate(const U &x) const {
    U acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + convert<U>(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1)
      return {};
    std::vector<T> c(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      c[k - 1] = coeffs_[k] * T(static_cast<int>(k));
    return Polynomial(std::move(c));
  }

  Polynomial &operator+=(const Polynomial &o) {
    if (o.coeffs_.size() > coeffs_.size())
      coeffs_.resize(o.coeffs_.size(), T{});
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
      coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial &operator-=(const Polynomial &o) {
    if (o.coeffs_.size() > coeffs_.size())
      coeffs_.resize(o.coeffs_.size(), T{});
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
      coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
  friend Polynomial operator-(const Polynomial &a) { return Polynomial{} - a; }
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<T> c(a.coeffs_.size() + b.coeffs_.size() - 1, T{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.coeffs_ == b.coeffs_; }

private:
  template <class U> static U convert(const T &v) {
    if constexpr (std::is_same_v<T, Rational> &&
                  (std::is_same_v<U, double> || std::is_same_v<U, Complex> || std::is_same_v<U, ComplexRational> ||
                   std::is_same_v<U, HighPrecision>))
      return from_rational<U>(v);
    else
      return U(v);
  }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T{})
      coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPolynomial = Polynomial<Rational>;
using ComplexRationalPolynomial = Polynomial<ComplexRational>;

/// Sparse polynomial in the two formal variables (X, d) with exact rational
/// coefficients. Keys are (degree in X, degree in d); no zero terms stored.
class BivariatePolynomial {
public:
  using Exponents = std::pair<int, int>;

  BivariatePolynomial() = default;
  BivariatePolynomial(const Rational &constant) { add_term(0, 0, constant); }
  BivariatePolynomial(int constant) : BivariatePolynomial(Rational(constant)) {}

  static BivariatePolynomial X() { return term(1, 0, Rational(1)); }
  static BivariatePolynomial d() { return term(0, 1, Rational(1)); }
  static BivariatePolynomial term(int x_deg, int d_deg, const Rational &coeff) {
    BivariatePolynomial p;
    p.add_term(x_deg, d_deg, coeff);
    return p;
  }

  void add_term(int x_deg, int d_deg, const Rational &coeff);

  const std::map<Exponents, Rational> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int x_deg, int d_deg) const;
  int degree_x() const;

  /// Coefficient of X^k as a polynomial in d.
  RationalPolynomial coefficient_of_x(int k) const;

  /// Substitutes numeric d, leaving a polynomial in X.
  RationalPolynomial at_d(const Rational &d_value) const;

  BivariatePolynomial &operator+=(const BivariatePolynomial &o);
  BivariatePolynomial &operator-=(const BivariatePolynomial &o);
  friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial &b) { return a += b; }
  friend BivariatePolynomial operator-(BivariatePolynomial a, const BivariatePolynomial &b) { return a -= b; }
  friend BivariatePolynomial operator-(const BivariatePolynomial &a) { return BivariatePolynomial{} - a; }
  friend BivariatePolynomial operator*(const BivariatePolynomial &a, const BivariatePolynomial &b);
  friend bool operator==(const BivariatePolynomial &a, const BivariatePolynomial &b) { return a.terms_ == b.terms_; }

  /// Plain expanded form, e.g. "-X^3 + 4*X*d^2 - 20*X + 8*d".
  std::string to_string() const;

  /// Rewrites every even power of d through h = d^2 - (N+3), leaving d to at
  /// most the first power, and prints grouped by powers of X in the layout of
  /// the classic secular-equation tables, e.g. "-X^3 + 4*h*X + 8*d".
  std::string to_table_string(int N) const;

private:
  std::map<Exponents, Rational> terms_;
};

std::string to_string(const RationalPolynomial &p, const std::string &var = "f");

} // namespace qes
