#include "doctest.h"

#include "qes/secular.hpp"
#include "qes/spectra.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace qes;

TEST_CASE("eigencharges worked examples") {
  SUBCASE("N=1, d=1: conjugate pair -3 +- i sqrt3") {
    auto s = eigencharges(ModelParams(1, 0.0, 1.0));
    REQUIRE(s.charges.size() == 2);
    CHECK(s.charges[0].real() == doctest::Approx(-3.0));
    CHECK(s.charges[0].imag() == doctest::Approx(-std::sqrt(3.0)));
    CHECK(s.charges[1].imag() == doctest::Approx(std::sqrt(3.0)));
    CHECK_FALSE(s.real[0]);
    CHECK_FALSE(s.real[1]);
    CHECK_FALSE(s.all_real());
  }
  SUBCASE("N=1, c=2.5: -9 and -6") {
    auto s = eigencharges(ModelParams(1, 0.0, 2.5));
    CHECK(s.all_real());
    CHECK(s.charges[0].real() == doctest::Approx(-9.0).epsilon(1e-14));
    CHECK(s.charges[1].real() == doctest::Approx(-6.0).epsilon(1e-14));
  }
  SUBCASE("N=0, c=5: -10") {
    auto s = eigencharges(ModelParams(0, 0.0, 5.0));
    REQUIRE(s.charges.size() == 1);
    CHECK(s.charges[0].real() == doctest::Approx(-10.0));
    CHECK(s.real[0]);
  }
  CHECK_THROWS_AS(eigencharges(ModelParams(1, 0.0, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("eigencharges are the roots of the secular polynomial") {
  std::mt19937 rng(77);
  for (int N = 0; N <= 10; ++N)
    for (int trial = 0; trial < 10; ++trial) {
      const Rational d = oracle::random_rational(rng, 5, 40);
      const ModelParams p = ModelParams::from_d(N, d);
      const auto s = eigencharges(p);
      CHECK(s.charges.size() == static_cast<std::size_t>(N + 1));
      INFO("N=" << N << " d=" << d);
      CHECK(oracle::multiset_distance(s.charges, oracle::polynomial_roots(char_poly_f(p))) < 1e-10);
      // conjugate pairs
      std::vector<Complex> conj;
      for (auto f : s.charges)
        conj.push_back(std::conj(f));
      CHECK(oracle::multiset_distance(s.charges, conj) < 1e-9);
    }
}

TEST_CASE("critical screening values") {
  CHECK(critical_d(1, 1e-9).d == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(critical_d(2, 1e-9).d - 2.9865) < 5e-4);
  CHECK(std::abs(critical_d(3, 1e-9).d - 3.765) < 5e-3);
  CHECK_THROWS_AS(critical_d(0, 1e-6), std::domain_error);
}

TEST_CASE("reality changes across the critical screening") {
  for (int N = 1; N <= 3; ++N) {
    const double dstar = critical_d(N, 1e-9).d;
    for (double d : {dstar + 0.1, dstar + 0.5, dstar + 3.0})
      CHECK(eigencharges(ModelParams::from_d(N, Rational(d))).all_real());
    for (double d : {dstar - 0.1, dstar * 0.5, 0.3})
      CHECK_FALSE(eigencharges(ModelParams::from_d(N, Rational(d))).all_real());
  }
}

TEST_CASE("critical_d trace records a monotone scan") {
  auto r = critical_d(2, 1e-6);
  REQUIRE_FALSE(r.trace.empty());
  for (const auto &pt : r.trace)
    CHECK(pt.all_real == (pt.d > r.d));
}

TEST_CASE("asymptotic charges") {
  CHECK(asymptotic_charges(0, 100.0) == std::vector<double>{-200.0});
  CHECK(asymptotic_charges(2, 100.0) == std::vector<double>{-200.0, -400.0, -600.0});
  auto exact = eigencharges(ModelParams(2, 0.0, 100.0));
  auto approx = asymptotic_charges(2, 100.0);
  // exact ascending, estimates descending
  for (int n = 0; n <= 2; ++n)
    CHECK(std::abs(exact.charges[2 - n].real() - approx[n]) < 1.0);
  // N=1 ratio to -2(n+1)c tends to one
  double prev = 1.0;
  for (double c : {10.0, 100.0, 1000.0}) {
    auto s = eigencharges(ModelParams(1, 0.0, c));
    const double err = std::abs(s.charges[1].real() / (-2.0 * c) - 1.0);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("roots tracked from large screening never get lost") {
  for (int N = 1; N <= 3; ++N) {
    const double stop = critical_d(N, 1e-8).d + 0.5;
    auto track = track_charges(N, 50.0, stop, 400);
    CHECK_FALSE(track.lost_root);
    CHECK(track.continuous);
  }
}

TEST_CASE("spectrum depends on d only") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = trial % 6;
    const double a = u(rng), c = u(rng) + 5.0;
    auto x = eigencharges(ModelParams(N, a, c));
    auto y = eigencharges(ModelParams(N, 0.0, a + c));
    CHECK(oracle::multiset_distance(x.charges, y.charges) < 1e-9);
  }
}

TEST_CASE("high-precision polishing") {
  const auto p = char_poly_f(ModelParams(1, 0.0, 2.5));
  CHECK(abs(polish_real_charge(p, -6.1) + 6) < HighPrecision(1e-45));
  CHECK(abs(polish_real_charge(p, -8.7) + 9) < HighPrecision(1e-45));
}
