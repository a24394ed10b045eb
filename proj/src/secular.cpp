#include "qes/secular.hpp"

namespace qes {

RationalPolynomial char_poly_f(const ModelParams &params) {
  const auto f = RationalPolynomial::monomial(1);
  const auto Q0 = build_Q<Rational>(params);
  auto Qf = Q0.map<RationalPolynomial>([](const Rational &v) { return RationalPolynomial(v); });
  return Qf.shifted(f).determinant();
}

BivariatePolynomial reduced_secular(int N) {
  if (N < 0)
    throw std::domain_error("N must be non-negative");
  const auto X = BivariatePolynomial::X();
  const auto d = BivariatePolynomial::d();
  // a = 0, c = d; every entry is an integer polynomial in (X, d)
  QuadridiagonalMatrix<BivariatePolynomial> Q(static_cast<std::size_t>(N) + 1);
  const BivariatePolynomial f = X - BivariatePolynomial(N + 2) * d;
  for (int n = 0; n <= N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    Q.set_sub(k, BivariatePolynomial(-2 * (N + 1 - n)));
    Q.set_diag(k, BivariatePolynomial(-2 * (N + 1 - n)) * d - f);
    Q.set_super1(k, BivariatePolynomial((n + 1) * (n + 2)));
    Q.set_super2(k, BivariatePolynomial((n + 1) * (n + 2)) * d);
  }
  return Q.determinant();
}

const std::vector<std::vector<ReducedTerm>> &reference_secular_rows() {
  static const std::vector<std::vector<ReducedTerm>> rows = {
      // -X
      {{-1, 1, 0, 0}},
      // X^2 - h
      {{1, 2, 0, 0}, {-1, 0, 1, 0}},
      // -X^3 + 4hX + 8d
      {{-1, 3, 0, 0}, {4, 1, 1, 0}, {8, 0, 0, 1}},
      // X^4 - 10hX^2 - 48dX + 9h^2 - 36
      {{1, 4, 0, 0}, {-10, 2, 1, 0}, {-48, 1, 0, 1}, {9, 0, 2, 0}, {-36, 0, 0, 0}},
      // -X^5 + 20hX^3 + 168dX^2 - 32(2h^2 - 9)X - 384hd
      {{-1, 5, 0, 0}, {20, 3, 1, 0}, {168, 2, 0, 1}, {-64, 1, 2, 0}, {288, 1, 0, 0}, {-384, 0, 1, 1}},
      // X^6 - 35hX^4 - 448dX^3 + (259h^2 - 1296)X^2 + 3520hdX - 225h^3 + 10000h + 51200
      {{1, 6, 0, 0},
       {-35, 4, 1, 0},
       {-448, 3, 0, 1},
       {259, 2, 2, 0},
       {-1296, 2, 0, 0},
       {3520, 1, 1, 1},
       {-225, 0, 3, 0},
       {10000, 0, 1, 0},
       {51200, 0, 0, 0}},
  };
  return rows;
}

BivariatePolynomial expand_reduced(const std::vector<ReducedTerm> &row, int N) {
  const auto d = BivariatePolynomial::d();
  const BivariatePolynomial h = d * d - BivariatePolynomial(N + 3);
  BivariatePolynomial out;
  for (const auto &t : row) {
    BivariatePolynomial term = BivariatePolynomial::term(t.x_deg, t.d_deg, Rational(t.coeff));
    for (int k = 0; k < t.h_deg; ++k)
      term = term * h;
    out += term;
  }
  return out;
}

std::vector<TableRowCheck> table1_check() {
  std::vector<TableRowCheck> out;
  const auto &rows = reference_secular_rows();
  for (int N = 0; N < static_cast<int>(rows.size()); ++N) {
    auto computed = reduced_secular(N);
    auto expected = expand_reduced(rows[static_cast<std::size_t>(N)], N);
    auto diff = computed - expected;
    out.push_back({N, diff.is_zero(), std::move(computed), std::move(expected), std::move(diff)});
  }
  return out;
}

} // namespace qes
