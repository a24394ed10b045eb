#include "qes/spectra.hpp"

#include "qes/secular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qes {

bool EigenchargeSet::all_real() const {
  return std::all_of(real.begin(), real.end(), [](bool r) { return r; });
}

std::size_t EigenchargeSet::real_count() const {
  return static_cast<std::size_t>(std::count(real.begin(), real.end(), true));
}

namespace {

Eigen::MatrixXd dense_Q0(const ModelParams &params) {
  const auto Q = build_Q<double>(params);
  const auto n = static_cast<Eigen::Index>(Q.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = Q(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

// Polynomial value at a double point, evaluated exactly and then rounded, so
// cancellation between large coefficients cannot pollute the Newton step.
Complex exact_value(const RationalPolynomial &poly, const Complex &z) {
  const ComplexRational zq{Rational(z.real()), Rational(z.imag())};
  return poly.evaluate(zq).to_complex();
}

bool is_real_charge(const Complex &f, double tol) { return std::abs(f.imag()) <= tol * (1.0 + std::abs(f)); }

} // namespace

EigenchargeSet eigencharges(const ModelParams &params, double tol) {
  if (!(tol > 0))
    throw std::invalid_argument("reality tolerance must be positive");
  const Eigen::MatrixXd Q0 = dense_Q0(params);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(Q0, false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolve of Q(0) failed for N=" << params.N() << " a=" << params.a() << " c=" << params.c()
       << "\n"
       << Q0;
    throw EigensolverError(os.str());
  }

  const auto poly = char_poly_f(params);
  const auto dpoly = poly.derivative();

  EigenchargeSet out{params, {}, {}, tol};
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    Complex f = solver.eigenvalues()[k];
    // one Newton step, kept only if it lowers the residual
    const Complex p = exact_value(poly, f);
    const Complex dp = exact_value(dpoly, f);
    if (std::abs(dp) > 0) {
      const Complex next = f - p / dp;
      if (std::isfinite(next.real()) && std::isfinite(next.imag()) && std::abs(exact_value(poly, next)) < std::abs(p))
        f = next;
    }
    out.charges.push_back(f);
  }
  std::sort(out.charges.begin(), out.charges.end(), [](const Complex &x, const Complex &y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  for (const auto &f : out.charges)
    out.real.push_back(is_real_charge(f, tol));
  return out;
}

HighPrecision polish_real_charge(const RationalPolynomial &poly, double guess) {
  const auto dpoly = poly.derivative();
  HighPrecision f = guess;
  const HighPrecision eps = std::numeric_limits<HighPrecision>::epsilon() * 16;
  for (int iter = 0; iter < 200; ++iter) {
    const HighPrecision p = poly.evaluate(f);
    const HighPrecision dp = dpoly.evaluate(f);
    if (dp == 0)
      break;
    const HighPrecision step = p / dp;
    f -= step;
    if (abs(step) <= eps * (1 + abs(f)))
      break;
  }
  return f;
}

CriticalScreening critical_d(int N, double tol) {
  if (N < 1)
    throw std::domain_error("critical_d needs N >= 1");
  if (!(tol > 0))
    throw std::invalid_argument("tolerance must be positive");

  std::vector<ScanPoint> trace;
  auto all_real = [&](double d) {
    const bool r = eigencharges(ModelParams::from_d(N, Rational(d))).all_real();
    trace.push_back({d, r});
    return r;
  };

  double lo = 1.0, hi = 8.0;
  while (all_real(lo)) {
    lo /= 2;
    if (lo < 1e-6)
      throw BracketError("all charges real down to d = 0; no lower bracket", trace);
  }
  while (!all_real(hi)) {
    hi *= 2;
    if (hi > 1e6)
      throw BracketError("complex charges persist up to d = 1e6; no upper bracket", trace);
  }

  // The predicate must switch exactly once inside the bracket.
  constexpr int kScan = 64;
  std::vector<bool> flags;
  for (int i = 0; i <= kScan; ++i)
    flags.push_back(all_real(lo + (hi - lo) * i / kScan));
  auto first_true = std::find(flags.begin(), flags.end(), true);
  if (std::find(first_true, flags.end(), false) != flags.end() || first_true == flags.begin())
    throw BracketError("reality predicate is not monotone on the scanned bracket", trace);
  const auto idx = static_cast<int>(first_true - flags.begin());
  double a = lo + (hi - lo) * (idx - 1) / kScan;
  double b = lo + (hi - lo) * idx / kScan;

  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b)
      break;
    (all_real(mid) ? b : a) = mid;
  }
  return {0.5 * (a + b), std::move(trace)};
}

std::vector<double> asymptotic_charges(int N, double c) {
  std::vector<double> out;
  for (int n = 0; n <= N; ++n) {
    const double Y0 = N - 2 * n;
    out.push_back(c * (Y0 - N - 2));
  }
  return out;
}

ChargeTrack track_charges(int N, double c_from, double c_to, int steps) {
  if (steps < 1)
    throw std::invalid_argument("steps must be positive");
  ChargeTrack track;
  std::vector<double> current = asymptotic_charges(N, c_from);
  for (int s = 0; s <= steps; ++s) {
    const double c = c_from + (c_to - c_from) * s / steps;
    const auto set = eigencharges(ModelParams::from_d(N, Rational(c)));
    if (!set.all_real()) {
      track.lost_root = true;
      track.continuous = false;
      break;
    }
    std::vector<double> fresh;
    for (const auto &f : set.charges)
      fresh.push_back(f.real());

    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j)
        gap = std::min(gap, std::abs(current[i] - current[j]));

    // nearest-neighbour assignment; with a sub-half-gap move it is unique
    std::vector<double> next(current.size());
    std::vector<bool> used(fresh.size(), false);
    for (std::size_t i = 0; i < current.size(); ++i) {
      std::size_t best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < fresh.size(); ++j)
        if (!used[j] && std::abs(fresh[j] - current[i]) < best_dist) {
          best = j;
          best_dist = std::abs(fresh[j] - current[i]);
        }
      used[best] = true;
      next[i] = fresh[best];
      if (s > 0 && !(best_dist < 0.5 * gap))
        track.continuous = false;
    }
    current = next;
    track.c_values.push_back(c);
    track.roots.push_back(current);
  }
  return track;
}

} // namespace qes
