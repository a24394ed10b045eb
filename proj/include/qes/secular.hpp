#pragma once

#include "qes/core.hpp"
#include "qes/polynomial.hpp"

#include <string>
#include <vector>

namespace qes {

/// det[Q(0) - f I] as an exact polynomial of degree N+1 in f.
RationalPolynomial char_poly_f(const ModelParams &params);

/// The secular determinant in the reduced variables: a = 0, c = d, and
/// f = X - (N+2) d. The result depends on X and d only.
BivariatePolynomial reduced_secular(int N);

/// One term coeff * X^x * h^h * d^d of a secular equation written with the
/// abbreviation h = d^2 - N - 3.
struct ReducedTerm {
  long coeff;
  int x_deg;
  int h_deg;
  int d_deg;
};

/// The six reference secular equations for N = 0..5 in (X, h, d) form.
const std::vector<std::vector<ReducedTerm>> &reference_secular_rows();

/// Expands a row written in (X, h, d) to (X, d) by h = d^2 - N - 3.
BivariatePolynomial expand_reduced(const std::vector<ReducedTerm> &row, int N);

struct TableRowCheck {
  int N;
  bool match;
  BivariatePolynomial computed;
  BivariatePolynomial expected;
  BivariatePolynomial difference; // computed - expected
};

/// Compares reduced_secular(N) with the reference rows, N = 0..5.
std::vector<TableRowCheck> table1_check();

} // namespace qes
