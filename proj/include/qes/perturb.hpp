#pragma once

#include "qes/core.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace qes {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// M(Y, lambda) = Q(f) / c at a = 0, with Y = (f + (N+2) c) / c and
/// lambda = 1/c:
///   sub  -2(N+1-n) lambda,  diag -Y - N + 2n,
///   sup1 (n+1)(n+2) lambda, sup2 (n+1)(n+2).
template <class T> QuadridiagonalMatrix<T> build_rescaled(int N, const T &lambda, const T &Y) {
  QuadridiagonalMatrix<T> M(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    M.set_sub(k, from_rational<T>(Rational(-2 * (N + 1 - n))) * lambda);
    M.set_diag(k, from_rational<T>(Rational(2 * n - N)) - Y);
    M.set_super1(k, from_rational<T>(Rational((n + 1) * (n + 2))) * lambda);
    M.set_super2(k, from_rational<T>(Rational((n + 1) * (n + 2))));
  }
  return M;
}

/// H = H0 + lambda H1 with M = H - Y I. H0 is upper triangular (diagonal and
/// second superdiagonal), H1 carries the sub- and first superdiagonal.
struct RescaledParts {
  QuadridiagonalMatrix<Rational> H0;
  QuadridiagonalMatrix<Rational> H1;
};

RescaledParts rescaled_parts(int N);

/// One level of the lambda = 0 problem. Levels are labelled by the pivot
/// index alpha in 0..N, the single component where the diagonal of H0 - Y0
/// vanishes; Y0 = 2 alpha - N. Both vectors are primitive integer vectors
/// with a positive pivot entry.
struct UnperturbedLevel {
  int alpha;
  Rational Y0;
  RationalVector h; // (H0 - Y0) h = 0, h_n = 0 for n > alpha
  RationalVector g; // g (H0 - Y0) = 0, g_n = 0 for n < alpha
};

std::vector<UnperturbedLevel> unperturbed_spectrum(int N);

class DegenerateOverlapError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Rayleigh-Schroedinger series for one level, to order K:
///   Y(lambda) = sum_k Y[k] lambda^k,  h(lambda) = sum_k h[k] lambda^k.
/// h[0] is the primitive unperturbed vector and h[k]_alpha = 0 for k >= 1
/// (for the top level alpha = N this is h_N^[k] = 0).
struct PerturbationSeries {
  int N;
  int alpha;
  std::vector<Rational> Y;
  std::vector<RationalVector> h;

  /// sum_{k <= order} Y[k] lambda^k; order < 0 means all available terms.
  Rational partial_sum(const Rational &lambda, int order = -1) const;
  double partial_sum(double lambda, int order = -1) const;

  /// Eigencharge implied by a value of Y at screening c = 1/lambda.
  static Rational charge_from_Y(int N, const Rational &Y, const Rational &lambda) {
    return (Y - (N + 2)) / lambda;
  }

  /// Ratio-test estimate of the convergence radius in lambda from the last
  /// two nonzero even coefficients. Diagnostic only.
  std::optional<double> radius_estimate() const;
};

PerturbationSeries rs_corrections(int N, int alpha, int K);

/// Overlaps G[a][b] = g_a . h_b, F = G^{-1}, and the rank-one projectors
/// P_a = h_a^T F[a][a] g_a of the lambda = 0 problem.
struct ProjectorSet {
  RationalMatrix G;
  RationalMatrix F;
  std::vector<RationalMatrix> P;
};

ProjectorSet projectors(int N);

RationalMatrix identity_matrix(std::size_t n);
RationalMatrix multiply(const RationalMatrix &x, const RationalMatrix &y);
/// Exact inverse by Gauss-Jordan; throws DegenerateOverlapError when singular.
RationalMatrix inverse(const RationalMatrix &m);

} // namespace qes
