// Acceptance suite: one line per criterion, exit status 0 only if all pass.

#include "qes/perturb.hpp"
#include "qes/secular.hpp"
#include "qes/spectra.hpp"
#include "qes/sturmian.hpp"
#include "qes/verify.hpp"
#include "oracles.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

using namespace qes;

namespace {

// Pinned tolerances.
constexpr double kTable1Seconds = 1.0;
constexpr double kRootRelTol = 1e-10;
constexpr double kRootSeconds = 10.0;
constexpr double kCritical1 = 2.0, kCritical1Tol = 1e-6;
constexpr double kCritical2 = 2.9865, kCritical2Tol = 5e-4;
constexpr double kCritical3 = 3.765, kCritical3Tol = 5e-3;
constexpr double kAsymptoticTol = 2e-3;
constexpr double kSturmianTol = 1e-10;
constexpr double kParallelTol = 1e-10;
constexpr double kShiftTol = 1e-9;
constexpr double kShootDefect = 1e-6;
constexpr double kShootContrast = 1e3;
constexpr double kShootSeconds = 30.0;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int digits = 3) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

// ---------------------------------------------------------------------------

Outcome table1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const auto &row : table1_check())
    ok = ok && row.match;
  const double t = seconds_since(t0);
  return {ok && t < kTable1Seconds, "N = 0..5 exact, " + fmt(t) + " s"};
}

Outcome root_consistency() {
  // only the library side is timed; the 50-digit Aberth oracle is not
  std::mt19937 rng(20240517);
  double worst = 0, t = 0, t_oracle = 0;
  for (int sample = 0; sample < 100; ++sample) {
    const Rational d = oracle::random_rational(rng, 5, 97);
    for (int N = 0; N <= 10; ++N) {
      const ModelParams p(N, Rational(0), d);
      auto t0 = std::chrono::steady_clock::now();
      const auto set = eigencharges(p);
      const auto poly = char_poly_f(p);
      t += seconds_since(t0);
      t0 = std::chrono::steady_clock::now();
      const auto roots = oracle::polynomial_roots(poly);
      t_oracle += seconds_since(t0);
      worst = std::max(worst, oracle::multiset_distance(set.charges, roots));
    }
  }
  return {worst <= kRootRelTol && t < kRootSeconds,
          "100 d x N = 0..10, max rel " + fmt(worst) + ", " + fmt(t) + " s (oracle " + fmt(t_oracle) + " s)"};
}

Outcome critical_screenings() {
  const double d1 = critical_d(1).d, d2 = critical_d(2).d, d3 = critical_d(3).d;
  const bool ok = std::abs(d1 - kCritical1) <= kCritical1Tol && std::abs(d2 - kCritical2) <= kCritical2Tol &&
                  std::abs(d3 - kCritical3) <= kCritical3Tol;
  return {ok, "d1 = " + fmt(d1, 10) + ", d2 = " + fmt(d2, 10) + ", d3 = " + fmt(d3, 10)};
}

Outcome asymptotics() {
  const int N = 5;
  const double c = 100;
  const auto set = eigencharges(ModelParams(N, Rational(0), Rational(100)));
  // charges ascending are f_N .. f_0; Y0_n = N - 2n
  double worst_ratio = 0, worst_magnitude = 0;
  bool real = set.all_real();
  for (int n = 0; n <= N; ++n) {
    const double f = set.charges[static_cast<std::size_t>(N - n)].real();
    const double Y0 = N - 2 * n;
    worst_ratio = std::max(worst_ratio, std::abs(f / (c * (Y0 - N - 2)) - 1));
    worst_magnitude = std::max(worst_magnitude, std::abs(std::abs(f) / (2 * (n + 1) * c) - 1));
  }
  return {real && worst_ratio < kAsymptoticTol && worst_magnitude < kAsymptoticTol,
          "max |f/f_asym - 1| = " + fmt(worst_ratio) + ", magnitude law " + fmt(worst_magnitude)};
}

Eigen::VectorXcd brute_null_vector(const ModelParams &p, const Complex &f) {
  const auto Q = build_Q<Complex>(p, f);
  const auto n = static_cast<Eigen::Index>(Q.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = Q(i, j);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  lu.setThreshold(1e-9);
  return lu.kernel().col(0);
}

double parallel_defect(const std::vector<Complex> &h, const Eigen::VectorXcd &v) {
  Complex dot = 0;
  double nh = 0, nv = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    dot += std::conj(v[static_cast<Eigen::Index>(i)]) * h[i];
    nh += std::norm(h[i]);
    nv += std::norm(v[static_cast<Eigen::Index>(i)]);
  }
  return 1.0 - std::abs(dot) / std::sqrt(nh * nv);
}

Outcome sturmian_residual() {
  double worst = 0, worst_parallel = 0;
  int count = 0;
  for (int N = 0; N <= 8; ++N)
    for (const auto &[a, c] : {std::pair{Rational(0), make_rational(13, 2)}, std::pair{Rational(0), Rational(10)},
                               std::pair{make_rational(3, 4), make_rational(19, 4)},
                               std::pair{Rational(0), Rational(25)}, std::pair{Rational(0), Rational(-9)}}) {
      const ModelParams p(N, a, c);
      const auto poly = char_poly_f(p);
      const auto set = eigencharges(p);
      for (std::size_t i = 0; i < set.charges.size(); ++i) {
        if (!set.real[i])
          continue;
        const Complex f = set.charges[i];
        const auto fw = polish_real_charge(poly, f.real());
        worst = std::max(worst, residual_norm_wide(p, fw));
        worst_parallel = std::max(worst_parallel, parallel_defect(right_coefficients<Complex>(p, f),
                                                                  brute_null_vector(p, f)));
        ++count;
      }
    }
  return {worst <= kSturmianTol && worst_parallel <= kParallelTol,
          std::to_string(count) + " real charges, max residual " + fmt(worst) + ", max parallel defect " +
              fmt(worst_parallel)};
}

Outcome ode_oracle() {
  bool ok = true;
  for (const Rational &c : {Rational(1), make_rational(5, 2), make_rational(-7, 3), Rational(11)})
    for (const Rational &a : {Rational(0), make_rational(1, 2)}) {
      const ModelParams p(0, a, c);
      const Rational f = -2 * p.d();
      ok = ok && ode_residual(make_sturmian<Rational>(p, f)).is_zero();
    }
  const ModelParams p1(1, Rational(0), make_rational(5, 2));
  for (const Rational &f : {Rational(-6), Rational(-9)})
    ok = ok && ode_residual(make_sturmian<Rational>(p1, f)).is_zero();
  const bool negative = !ode_residual(make_sturmian<Rational>(p1, Rational(-5))).is_zero();
  return {ok && negative, "N = 0 (8 points), N = 1 f = -6, -9 exact zero; f = -5 nonzero"};
}

RationalVector ints(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs)
    v.emplace_back(x);
  return v;
}

Outcome perturbation_integers() {
  const auto L = unperturbed_spectrum(4);
  bool ok = L[0].h == ints({1, 0, 0, 0, 0}) && L[2].h == ints({1, 0, 2, 0, 0}) && L[4].h == ints({3, 0, 12, 0, 4});
  ok = ok && L[0].Y0 == -4 && L[2].Y0 == 0 && L[4].Y0 == 4;
  ok = ok && L[0].g == ints({4, 0, -2, 0, 3}) && L[2].g == ints({0, 0, 1, 0, -3}) && L[4].g == ints({0, 0, 0, 0, 1});
  const auto proj = projectors(4);
  for (int i : {0, 2, 4})
    for (int j : {0, 2, 4})
      ok = ok && proj.G[i][j] == (i != j ? 0 : i == 2 ? 2 : 4);
  const auto s = rs_corrections(2, 2, 1);
  ok = ok && s.Y[1] == 0 && s.h[1] == ints({0, 4, 0});
  return {ok, "N = 4 even block triples, left vectors, G = diag(4,2,4); N = 2 Y[1] = 0, h[1] = (0,4,0)"};
}

Outcome odd_orders() {
  int checked = 0;
  bool ok = true;
  for (int N = 0; N <= 5; ++N)
    for (int alpha = 0; alpha <= N; ++alpha) {
      const auto s = rs_corrections(N, alpha, 7);
      for (int k = 1; k <= 7; k += 2, ++checked)
        ok = ok && s.Y[k] == 0;
    }
  return {ok, std::to_string(checked) + " odd coefficients exactly zero"};
}

Outcome series_convergence() {
  const std::vector<long> cs = {10, 20, 50, 100, 200, 500, 1000};
  double min_margin = 1e300;
  std::string worst;
  for (int N = 1; N <= 3; ++N)
    for (int alpha = 0; alpha <= N; ++alpha)
      for (int K : {2, 4}) {
        const auto s = rs_corrections(N, alpha, K);
        std::vector<double> lx, ly;
        for (long c : cs) {
          const HighPrecision lambda = HighPrecision(1) / c;
          HighPrecision S = 0;
          for (auto it = s.Y.rbegin(); it != s.Y.rend(); ++it)
            S = S * lambda + from_rational<HighPrecision>(*it);
          const ModelParams p(N, Rational(0), Rational(c));
          const auto f = polish_real_charge(char_poly_f(p), static_cast<double>(c) * (static_cast<double>(S) - N - 2));
          const HighPrecision Y = f / c + (N + 2);
          lx.push_back(std::log(1.0 / static_cast<double>(c)));
          ly.push_back(std::log(static_cast<double>(abs(Y - S))));
        }
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
          mx += lx[i] / lx.size();
          my += ly[i] / ly.size();
        }
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
          sxy += (lx[i] - mx) * (ly[i] - my);
          sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        const double margin = sxy / sxx - (K + 1);
        if (margin < min_margin) {
          min_margin = margin;
          worst = "N = " + std::to_string(N) + " level " + std::to_string(alpha) + " K = " + std::to_string(K) +
                  " slope " + fmt(sxy / sxx);
        }
      }
  return {min_margin >= 0, "lambda in [1e-3, 1e-1]; smallest slope - (K+1) = " + fmt(min_margin) + " (" + worst + ")"};
}

Outcome shift_invariance() {
  std::mt19937 rng(31337);
  double worst = 0;
  bool ok = true;
  int samples = 0;
  while (samples < 50) {
    const int N = static_cast<int>(rng() % 7);
    const Rational a = oracle::random_rational(rng, 3, 20);
    const Rational c = oracle::random_rational(rng, 6, 20);
    const Rational delta = oracle::random_rational(rng, 3, 20);
    if (c == 0 || c == delta)
      continue;
    const auto r = shift_invariance_check(ModelParams(N, a, c), delta, kShiftTol);
    worst = std::max(worst, r.distance);
    ok = ok && r.pass;
    ++samples;
  }
  return {ok, "50 samples N <= 6, max distance " + fmt(worst)};
}

Outcome sl2() {
  std::mt19937 rng(4242);
  bool commutators = true, eigen = true;
  for (int N = 0; N <= 6; ++N) {
    const Rational c = oracle::random_rational(rng, 5, 9);
    commutators = commutators && sl2_commutator_check(N, c, N + 3).pass;
  }
  // (T - f) phi(f) has coefficients of degree <= N + 1 in f; rows 1..N vanish
  // identically and row 0 is proportional to det Q(f), checked at N + 2 points.
  for (int N = 0; N <= 6; ++N) {
    const Rational c = oracle::random_rational(rng, 5, 9) + 7;
    const ModelParams p(N, Rational(0), c);
    const auto T = recurrence_operator(N, c);
    const auto secular = char_poly_f(p);
    std::optional<Rational> ratio;
    for (int s = 0; s <= N + 2; ++s) {
      const Rational f = make_rational(5 * s - 13, 4);
      const RationalPolynomial phi(right_coefficients<Rational>(p, f));
      const auto residual = T.apply(phi) - RationalPolynomial(f) * phi;
      const Rational value = secular.evaluate(f);
      if (residual.degree() > 0) {
        eigen = false;
        continue;
      }
      if (value == 0) {
        eigen = eigen && residual.is_zero();
        continue;
      }
      const Rational r = residual[0] / value;
      if (!ratio)
        ratio = r;
      eigen = eigen && r == *ratio;
    }
  }
  return {commutators && eigen, std::string("commutators N <= 6 ") + (commutators ? "exact" : "FAIL") +
                                    ", T phi = f phi " + (eigen ? "exact" : "FAIL")};
}

Outcome shooting() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_defect = 0, worst_contrast = 1e300;
  bool ok = true;
  for (int N = 0; N <= 3; ++N)
    for (const auto &[a, c] : {std::pair{Rational(0), Rational(5)}, std::pair{make_rational(1, 2), make_rational(9, 2)}}) {
      const ModelParams p(N, a, c);
      const double E = to_double(energy(p));
      const auto set = eigencharges(p);
      ok = ok && set.all_real();
      for (const auto &f : set.charges) {
        const double base = std::abs(ode_shoot(p, f.real(), E).defect);
        const double off = std::min(std::abs(ode_shoot(p, f.real() - 0.1, E).defect),
                                    std::abs(ode_shoot(p, f.real() + 0.1, E).defect));
        worst_defect = std::max(worst_defect, base);
        worst_contrast = std::min(worst_contrast, off / std::max(base, 1e-300));
        ok = ok && base < kShootDefect && off >= kShootContrast * base;
      }
    }
  const double t = seconds_since(t0);
  return {ok && t < kShootSeconds, "max defect " + fmt(worst_defect) + ", min contrast " + fmt(worst_contrast) +
                                       ", " + fmt(t) + " s"};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1  golden secular equations N <= 5", table1},
      {"2  eigenvalues of Q(0) = roots of det", root_consistency},
      {"3  critical screenings", critical_screenings},
      {"4  large-c asymptotics", asymptotics},
      {"5  Sturmian residual and null vector", sturmian_residual},
      {"6  symbolic ODE oracle", ode_oracle},
      {"7  perturbation integers", perturbation_integers},
      {"8  odd orders vanish", odd_orders},
      {"9  series convergence slope", series_convergence},
      {"10 shift invariance", shift_invariance},
      {"11 sl(2) relations and T phi = f phi", sl2},
      {"12 shooting verification", shooting}};
  int failures = 0;
  for (const auto &[name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(40) << name << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
