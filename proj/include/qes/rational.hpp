#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <bit>
#include <cmath>
#include <cstdint>
#include <complex>
#include <gmpxx.h>
#include <ostream>
#include <string>

namespace qes {

using Rational = mpq_class;
using Complex = std::complex<double>;
/// 50 significant digits; for residuals finer than double rounding allows.
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// Builds num/den in canonical form.
inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "p/q" or a decimal literal such as "2.5" or "-1e-3" exactly.
Rational parse_rational(const std::string &text);

/// Nearest double (ties to even). mpq_get_d truncates toward zero, which
/// turns 2.95 into 2.9499999999999997.
inline double to_double(const Rational &q) {
  const double t = q.get_d();
  if (!std::isfinite(t) || Rational(t) == q)
    return t;
  const double away = std::nextafter(t, q > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away))
    return t;
  const Rational dt = abs(q - Rational(t)), da = abs(Rational(away) - q);
  if (da != dt)
    return da < dt ? away : t;
  return (std::bit_cast<std::uint64_t>(t) & 1u) == 0 ? t : away;
}

inline Rational factorial(int n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out);
}

inline Rational pow2(int n) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return Rational(out);
}

/// Gaussian rational x + iy, used for exact residuals of the complex ODE.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(int r) : re(r) {}

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  ComplexRational &operator+=(const ComplexRational &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational &operator-=(const ComplexRational &o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational &operator*=(const ComplexRational &o) {
    Rational r = re * o.re - im * o.im;
    Rational m = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(m);
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational &b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational &b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational &b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational &a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational &a, const ComplexRational &b) {
    return a.re == b.re && a.im == b.im;
  }

  ComplexRational conj() const { return {re, -im}; }
  Complex to_complex() const { return {to_double(re), to_double(im)}; }
};

std::ostream &operator<<(std::ostream &os, const ComplexRational &z);

/// Conversion from exact rationals into the numeric backends.
template <class T> T from_rational(const Rational &q);
template <> inline Rational from_rational<Rational>(const Rational &q) { return q; }
template <> inline double from_rational<double>(const Rational &q) { return to_double(q); }
template <> inline Complex from_rational<Complex>(const Rational &q) { return {to_double(q), 0.0}; }
template <> inline ComplexRational from_rational<ComplexRational>(const Rational &q) { return {q}; }
template <> inline HighPrecision from_rational<HighPrecision>(const Rational &q) {
  return HighPrecision(q.get_num().get_str()) / HighPrecision(q.get_den().get_str());
}

} // namespace qes
