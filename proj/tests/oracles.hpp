#pragma once

// Independent reference computations used only by the test suites. Nothing
// here touches the band recurrences of the library.

#include "qes/polynomial.hpp"

#include <cstddef>
#include <random>
#include <vector>

namespace qes::oracle {

template <class T> using Dense = std::vector<std::vector<T>>;

/// Laplace expansion along the first row. Exponential, fine for n <= 8.
template <class T> T cofactor_determinant(const Dense<T> &m) {
  const std::size_t n = m.size();
  if (n == 0)
    return T(1);
  if (n == 1)
    return m[0][0];
  T acc{};
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col] == T{})
      continue;
    Dense<T> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<T> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col)
          row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    T term = m[0][col] * cofactor_determinant(minor);
    if (col % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

/// Dense Q(0) straight from the printed coefficient formulas.
inline Dense<Rational> dense_Q0(int N, const Rational &a, const Rational &c) {
  Dense<Rational> m(N + 1, std::vector<Rational>(N + 1, Rational(0)));
  for (int n = 0; n <= N; ++n) {
    if (n >= 1)
      m[n][n - 1] = -2 * (N + 1 - n);
    m[n][n] = -2 * a * (n + 1) - 2 * c * (N + 1 - n);
    if (n + 1 <= N)
      m[n][n + 1] = (n + 1) * (n + 2 - 2 * a * c);
    if (n + 2 <= N)
      m[n][n + 2] = c * (n + 1) * (n + 2);
  }
  return m;
}

/// Random rational p/q with |p| <= span*q, q in [1, max_den].
inline Rational random_rational(std::mt19937 &rng, long span, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  const long q = den(rng);
  std::uniform_int_distribution<long> num(-span * q, span * q);
  Rational r(num(rng), q);
  r.canonicalize();
  return r;
}

} // namespace qes::oracle

#include <boost/multiprecision/cpp_complex.hpp>

namespace qes::oracle {

using WideComplex = boost::multiprecision::cpp_complex_50;

/// All complex roots of an exact polynomial by Aberth-Ehrlich iteration in
/// 50-digit arithmetic. Independent of any matrix eigensolve.
inline std::vector<Complex> polynomial_roots(const RationalPolynomial &p) {
  const int n = p.degree();
  std::vector<WideComplex> coeff;
  for (int k = 0; k <= n; ++k)
    coeff.emplace_back(boost::multiprecision::cpp_bin_float_50(p[k].get_num().get_str()) /
                       boost::multiprecision::cpp_bin_float_50(p[k].get_den().get_str()));
  auto eval = [&](const WideComplex &z, WideComplex &dv) {
    WideComplex v = coeff[n];
    dv = 0;
    for (int k = n - 1; k >= 0; --k) {
      dv = dv * z + v;
      v = v * z + coeff[k];
    }
    return v;
  };
  // Cauchy bound for the initial circle
  boost::multiprecision::cpp_bin_float_50 bound = 0;
  for (int k = 0; k < n; ++k)
    bound = std::max(bound, boost::multiprecision::cpp_bin_float_50(abs(coeff[k] / coeff[n])));
  bound += 1;
  std::vector<WideComplex> z(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * 3.14159265358979 * (k + 0.25) / n + 0.4;
    z[k] = WideComplex(bound * std::cos(angle) * 0.5, bound * std::sin(angle) * 0.5);
  }
  for (int iter = 0; iter < 500; ++iter) {
    boost::multiprecision::cpp_bin_float_50 max_step = 0;
    for (int k = 0; k < n; ++k) {
      WideComplex dv;
      const WideComplex v = eval(z[k], dv);
      if (v == WideComplex(0))
        continue;
      const WideComplex ratio = v / dv;
      WideComplex sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k)
          sum += WideComplex(1) / (z[k] - z[j]);
      const WideComplex step = ratio / (WideComplex(1) - ratio * sum);
      z[k] -= step;
      max_step = std::max(max_step, boost::multiprecision::cpp_bin_float_50(abs(step)));
    }
    if (max_step < 1e-40 * bound)
      break;
  }
  std::vector<Complex> out;
  for (const auto &r : z)
    out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

/// Largest relative distance between two multisets, pairing greedily.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size())
    return 1e300;
  double worst = 0;
  for (const auto &x : a) {
    std::size_t best = 0;
    double dist = 1e300;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (std::abs(b[j] - x) < dist) {
        dist = std::abs(b[j] - x);
        best = j;
      }
    worst = std::max(worst, dist / std::max(1.0, std::abs(x)));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

} // namespace qes::oracle
