#include "qes/perturb.hpp"

#include <cmath>
#include <string>

namespace qes {

namespace {

Rational dot(const RationalVector &x, const RationalVector &y) {
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += x[i] * y[i];
  return acc;
}

// Scales v to a primitive integer vector whose entry at `pivot` is positive.
RationalVector primitive(RationalVector v, std::size_t pivot) {
  mpz_class l = 1, g = 0;
  for (const auto &q : v)
    if (q != 0)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  for (auto &q : v) {
    q *= Rational(l);
    if (q != 0)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (g == 0)
    return v;
  Rational scale = Rational(1) / Rational(g);
  if (v[pivot] < 0)
    scale = -scale;
  for (auto &q : v)
    q *= scale;
  return v;
}

Rational super2_coeff(int n) { return Rational((n + 1) * (n + 2)); }

} // namespace

RescaledParts rescaled_parts(int N) {
  const std::size_t size = static_cast<std::size_t>(N) + 1;
  RescaledParts parts{QuadridiagonalMatrix<Rational>(size), QuadridiagonalMatrix<Rational>(size)};
  const auto M0 = build_rescaled<Rational>(N, Rational(0), Rational(0));
  const auto M1 = build_rescaled<Rational>(N, Rational(1), Rational(0));
  for (std::size_t n = 0; n < size; ++n) {
    parts.H0.set_diag(n, M0.diag(n));
    parts.H0.set_super2(n, M0.super2(n));
    parts.H1.set_sub(n, M1.sub(n));
    parts.H1.set_super1(n, M1.super1(n));
  }
  return parts;
}

std::vector<UnperturbedLevel> unperturbed_spectrum(int N) {
  if (N < 0)
    throw std::domain_error("N must be non-negative");
  std::vector<UnperturbedLevel> levels;
  for (int alpha = 0; alpha <= N; ++alpha) {
    RationalVector h(static_cast<std::size_t>(N) + 1, Rational(0));
    RationalVector g(static_cast<std::size_t>(N) + 1, Rational(0));
    h[alpha] = 1;
    // (2(n - alpha)) h_n + D_n h_{n+2} = 0 for n < alpha
    for (int n = alpha - 2; n >= 0; n -= 2)
      h[n] = -super2_coeff(n) * h[n + 2] / (2 * (n - alpha));
    g[alpha] = 1;
    // g_{n-2} D_{n-2} + 2(n - alpha) g_n = 0 for n > alpha
    for (int n = alpha + 2; n <= N; n += 2)
      g[n] = -super2_coeff(n - 2) * g[n - 2] / (2 * (n - alpha));
    levels.push_back({alpha, Rational(2 * alpha - N), primitive(std::move(h), alpha), primitive(std::move(g), alpha)});
  }
  return levels;
}

Rational PerturbationSeries::partial_sum(const Rational &lambda, int order) const {
  const int top = order < 0 ? static_cast<int>(Y.size()) - 1 : std::min(order, static_cast<int>(Y.size()) - 1);
  Rational acc = 0, power = 1;
  for (int k = 0; k <= top; ++k) {
    acc += Y[k] * power;
    power *= lambda;
  }
  return acc;
}

double PerturbationSeries::partial_sum(double lambda, int order) const {
  const int top = order < 0 ? static_cast<int>(Y.size()) - 1 : std::min(order, static_cast<int>(Y.size()) - 1);
  double acc = 0;
  for (int k = top; k >= 0; --k)
    acc = acc * lambda + to_double(Y[k]);
  return acc;
}

std::optional<double> PerturbationSeries::radius_estimate() const {
  std::vector<double> even;
  for (std::size_t k = 2; k < Y.size(); k += 2)
    if (Y[k] != 0)
      even.push_back(std::abs(to_double(Y[k])));
  if (even.size() < 2)
    return std::nullopt;
  const double ratio = even[even.size() - 2] / even.back();
  return std::sqrt(ratio);
}

PerturbationSeries rs_corrections(int N, int alpha, int K) {
  if (alpha < 0 || alpha > N)
    throw std::domain_error("level index out of range");
  if (K < 0)
    throw std::domain_error("order must be non-negative");
  const auto parts = rescaled_parts(N);
  const auto level = unperturbed_spectrum(N)[static_cast<std::size_t>(alpha)];
  const Rational norm = dot(level.g, level.h);
  if (norm == 0)
    throw DegenerateOverlapError("zero overlap g0 . h0 at level " + std::to_string(alpha));

  PerturbationSeries s{N, alpha, {level.Y0}, {level.h}};
  const std::size_t size = level.h.size();
  for (int k = 1; k <= K; ++k) {
    // (H0 - Y0) h[k] = -H1 h[k-1] + sum_{j=1..k} Y[j] h[k-j]
    RationalVector rhs = parts.H1.apply(s.h[k - 1]);
    for (auto &v : rhs)
      v = -v;
    Rational Yk = -dot(level.g, rhs);
    for (int j = 1; j < k; ++j)
      Yk -= s.Y[j] * dot(level.g, s.h[k - j]);
    Yk /= norm;
    s.Y.push_back(Yk);
    for (int j = 1; j <= k; ++j)
      for (std::size_t n = 0; n < size; ++n)
        rhs[n] += s.Y[j] * s.h[k - j][n];

    RationalVector hk(size, Rational(0));
    for (int n = N; n >= 0; --n) {
      if (n == alpha)
        continue;
      Rational acc = rhs[n];
      if (n + 2 <= N)
        acc -= parts.H0.super2(n) * hk[n + 2];
      hk[n] = acc / (2 * (n - alpha));
    }
    // the pivot row holds by the choice of Y[k]
    Rational pivot_row = alpha + 2 <= N ? Rational(parts.H0.super2(alpha) * hk[alpha + 2]) : Rational(0);
    if (pivot_row != rhs[alpha])
      throw std::logic_error("solvability condition violated at order " + std::to_string(k));
    s.h.push_back(std::move(hk));
  }
  return s;
}

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m(n, RationalVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

RationalMatrix multiply(const RationalMatrix &x, const RationalMatrix &y) {
  const std::size_t n = x.size(), inner = y.size(), m = y.empty() ? 0 : y[0].size();
  RationalMatrix out(n, RationalVector(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (x[i][k] != 0)
        for (std::size_t j = 0; j < m; ++j)
          out[i][j] += x[i][k] * y[k][j];
  return out;
}

RationalMatrix inverse(const RationalMatrix &m) {
  const std::size_t n = m.size();
  RationalMatrix a = m, inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0)
      ++pivot;
    if (pivot == n)
      throw DegenerateOverlapError("singular overlap matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = Rational(1) / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0)
        continue;
      const Rational factor = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

ProjectorSet projectors(int N) {
  const auto levels = unperturbed_spectrum(N);
  const std::size_t n = levels.size();
  ProjectorSet out;
  out.G.assign(n, RationalVector(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out.G[a][b] = dot(levels[a].g, levels[b].h);
  out.F = inverse(out.G);
  for (std::size_t a = 0; a < n; ++a) {
    RationalMatrix P(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        P[i][j] = levels[a].h[i] * out.F[a][a] * levels[a].g[j];
    out.P.push_back(std::move(P));
  }
  return out;
}

} // namespace qes
