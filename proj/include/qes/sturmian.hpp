#pragma once

#include "qes/core.hpp"
#include "qes/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace qes {

/// Right coefficients with h_N = 1 and, for k = 0..N-1,
///   h_{N-k-1} = det(trailing (k+1)-block of Q(f)) / (2^{k+1} (k+1)!).
/// The denominator is the product of the subdiagonal entries -A_{N-k}..-A_N,
/// so this is back-substitution written as a determinant.
template <class T> std::vector<T> right_coefficients(const ModelParams &params, const T &f) {
  const int N = params.N();
  const auto trailing = build_Q<T>(params, f).trailing_minors();
  std::vector<T> h(params.dimension(), T{});
  h[static_cast<std::size_t>(N)] = T(1);
  for (int k = 0; k <= N - 1; ++k) {
    const Rational scale = Rational(1) / (pow2(k + 1) * factorial(k + 1));
    h[static_cast<std::size_t>(N - k - 1)] = trailing[static_cast<std::size_t>(k + 1)] * from_rational<T>(scale);
  }
  return h;
}

/// Left (row) coefficients from the leading minors P_j of Q(f):
///   g_j = (N-j)! P_j / 2^j,  j = 0..N,  so g_0 = N!.
/// g Q(f) = 0 holds whenever f is an eigencharge.
template <class T> std::vector<T> left_coefficients(const ModelParams &params, const T &f) {
  const int N = params.N();
  const auto leading = build_Q<T>(params, f).leading_minors();
  std::vector<T> g(params.dimension(), T{});
  for (int j = 0; j <= N; ++j) {
    const Rational scale = factorial(N - j) / pow2(j);
    g[static_cast<std::size_t>(j)] = leading[static_cast<std::size_t>(j)] * from_rational<T>(scale);
  }
  return g;
}

template <class T> struct SturmianSolution {
  ModelParams params;
  T f;
  Rational E;
  std::vector<T> h;
  std::vector<T> g;
};

template <class T> SturmianSolution<T> make_sturmian(const ModelParams &params, const T &f) {
  return {params, f, energy(params), right_coefficients(params, f), left_coefficients(params, f)};
}

/// ||Q(f) h||_inf / ||h||_inf.
double residual_norm(const ModelParams &params, const Complex &f, const std::vector<Complex> &h);

/// ||g Q(f)||_inf / ||g||_inf.
double left_residual_norm(const ModelParams &params, const Complex &f, const std::vector<Complex> &g);

/// Same two norms with h, g and Q(f) evaluated in 50-digit arithmetic at a
/// polished real charge, so that rounding of f does not dominate.
double residual_norm_wide(const ModelParams &params, const HighPrecision &f);
double left_residual_norm_wide(const ModelParams &params, const HighPrecision &f);

/// psi(x) = (c + ix) exp(-x^2/2 - iax) sum_n h_n (ix)^n at each sample.
std::vector<Complex> wavefunction_eval(const ModelParams &params, const std::vector<Complex> &h,
                                       std::span<const double> xs);

template <class T>
std::vector<Complex> wavefunction_eval(const SturmianSolution<T> &sol, std::span<const double> xs) {
  std::vector<Complex> h;
  for (const auto &v : sol.h) {
    if constexpr (std::is_same_v<T, Rational>)
      h.emplace_back(to_double(v), 0.0);
    else
      h.emplace_back(v);
  }
  return wavefunction_eval(sol.params, h, xs);
}

/// Substitutes psi into
///   -psi'' + (x^2 + 2iax + if/(x - ic)) psi - E psi,
/// multiplies by (x - ic) and strips exp(-x^2/2 - iax). The remaining
/// polynomial in x is returned with exact Gaussian-rational coefficients; it
/// is the zero polynomial exactly when (f, E, h) is a quasi-exact solution.
ComplexRationalPolynomial ode_residual(const ModelParams &params, const Rational &f, const Rational &E,
                                       const std::vector<Rational> &h);

inline ComplexRationalPolynomial ode_residual(const SturmianSolution<Rational> &sol) {
  return ode_residual(sol.params, sol.f, sol.E, sol.h);
}

/// Floating counterpart for irrational or complex charges.
struct FloatResidual {
  Polynomial<Complex> polynomial;
  double max_coefficient = 0;  // max |coefficient| of the residual
  double scale = 0;            // max |coefficient| of (x - ic) times the kinetic part, for relative use
};

FloatResidual ode_residual_float(const ModelParams &params, const Complex &f, double E,
                                 const std::vector<Complex> &h);

} // namespace qes
