#pragma once

#include "qes/core.hpp"
#include "qes/perturb.hpp"
#include "qes/polynomial.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qes {

// ---------------------------------------------------------------------------
// Shift invariance

struct ShiftReport {
  ModelParams original;
  ModelParams shifted;
  std::vector<Complex> charges_original;
  std::vector<Complex> charges_shifted;
  double distance = 0;       // see multiset_distance
  bool energy_consistent = false;
  bool pass = false;
};

/// Compares the eigencharges of (N, a, c) with those of (N, a + delta, c - delta)
/// and checks E(a + delta) - E(a) = (a + delta)^2 - a^2 exactly.
ShiftReport shift_invariance_check(const ModelParams &params, const Rational &delta, double tol = 1e-9);

/// Greedy nearest pairing of two equal-size multisets; returns the largest
/// |f - f'| / max(1, |f|) over the pairs, or +inf on a size mismatch.
double multiset_distance(const std::vector<Complex> &a, const std::vector<Complex> &b);

// ---------------------------------------------------------------------------
// Differential operators on polynomials in y

/// Linear operator sum_k p_k(y) d^k/dy^k with rational polynomial
/// coefficients, kept in normal form (derivatives to the right).
class PolyOperator {
public:
  PolyOperator() = default;

  static PolyOperator scalar(const Rational &s);
  static PolyOperator multiply(const RationalPolynomial &p);
  static PolyOperator derivative();

  const std::map<int, RationalPolynomial> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// max_k (deg p_k - k): how far the operator can raise polynomial degree.
  /// Zero for the zero operator.
  int degree_raise() const;

  RationalPolynomial apply(const RationalPolynomial &p) const;

  /// Matrix in the monomial basis {y^0..y^D}: entry (i, j) is the coefficient
  /// of y^i in T(y^j), with terms of degree > D dropped.
  RationalMatrix matrix(int D) const;

  /// Columns 0..exact_columns(D)-1 of matrix(D) lose nothing to the cutoff.
  int exact_columns(int D) const;

  PolyOperator &operator+=(const PolyOperator &o);
  PolyOperator &operator-=(const PolyOperator &o);
  friend PolyOperator operator+(PolyOperator a, const PolyOperator &b) { return a += b; }
  friend PolyOperator operator-(PolyOperator a, const PolyOperator &b) { return a -= b; }
  friend PolyOperator operator*(const Rational &s, const PolyOperator &a);
  /// Composition: (A * B) f = A(B f).
  friend PolyOperator operator*(const PolyOperator &a, const PolyOperator &b);
  friend bool operator==(const PolyOperator &a, const PolyOperator &b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

private:
  void add(int order, const RationalPolynomial &p);
  std::map<int, RationalPolynomial> terms_;
};

PolyOperator commutator(const PolyOperator &a, const PolyOperator &b);

// ---------------------------------------------------------------------------
// sl(2) structure

enum class GeneratorConvention {
  Printed, // J- = d, J0 = z d - N, J+ = z^2 d - 2N z, with z = y + c
  Spin     // J- = d, J0 = z d - N/2, J+ = z^2 d - N z
};

struct Sl2Generators {
  PolyOperator minus;
  PolyOperator zero;
  PolyOperator plus;
};

Sl2Generators generators(int N, const Rational &c, GeneratorConvention convention);

struct Sl2Report {
  int N;
  Rational c;
  int D;
  // [J-, J0] = J-, [J-, J+] = 2 J0, [J0, J+] = J+
  std::array<bool, 3> operator_identity{};
  std::array<bool, 3> matrix_identity{};
  int exact_columns = 0;
  bool pass = false;
};

/// Checks the three relations for the printed generators, once in operator
/// normal form and once as matrix products on monomials up to degree D,
/// restricted to the columns unaffected by the cutoff. Requires D >= N + 3.
Sl2Report sl2_commutator_check(int N, const Rational &c, int D);

/// T = (y+c) d^2 + 2 d + 2y(y+c) d - 2Ny - 2c(N+1), at a = 0. Its matrix on
/// degree <= N polynomials is Q(0), so T phi = f phi for phi = sum h_n y^n.
PolyOperator recurrence_operator(int N, const Rational &c);

/// J0 J- + 2 J+ - 2c J0 + (N+2) J- - 2(N+c) with the printed generators.
PolyOperator printed_hamiltonian(int N, const Rational &c);

struct LieDecomposition {
  GeneratorConvention convention;
  // coefficients of J0 J-, J+, J0, J-, 1
  std::array<Rational, 5> coefficients;
  bool exact = false;        // residual vanishes
  PolyOperator residual;     // T minus the best combination
  bool matches_printed = false;
  PolyOperator printed_residual; // T minus printed_hamiltonian
};

/// Exact least-squares fit of recurrence_operator(N, c) in the span of
/// {J0 J-, J+, J0, J-, 1}; exact = true when the fit has zero residual.
LieDecomposition lie_decompose(int N, const Rational &c, GeneratorConvention convention);

// ---------------------------------------------------------------------------
// ODE shooting

class ShootingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// exp(-x^2/2 - i a x + b ln|x|) with b = (E - a^2 - 1)/2: value 1 and the
/// logarithmic derivative at x = direction * x_max.
struct AsymptoticBC {
  double x_max;
  int direction;
  Complex b;
  Complex value;
  Complex derivative;
};

AsymptoticBC asymptotic_bc(const ModelParams &params, double E, double x_max, int direction);

struct ShootOptions {
  double x_max = 0;           // 0 picks sqrt(max(E, 0)) + 6
  int steps = 0;              // per side; 0 picks 200 per unit length
  int max_doublings = 3;      // x_max refinement
  double stabilize_tol = 1e-9;
};

struct ShootResult {
  Complex defect;           // Richardson-extrapolated matching defect at x = 0
  double richardson_error;  // |D(h/2) - D(h)| / 15
  double x_max;
  int steps;
  int doublings;
  bool stabilized;
};

/// Integrates -psi'' + (x^2 + 2iax + if/(x - ic)) psi = E psi inward from
/// -x_max and +x_max to 0 with fixed-step RK4 and returns the normalized
/// Wronskian (psi_L psi'_R - psi_R psi'_L) / |psi_L psi_R| at 0.
Complex shoot_defect(const ModelParams &params, const Complex &f, double E, double x_max, int steps);

/// shoot_defect with Richardson halving, then x_max doubling until the
/// defect changes by less than stabilize_tol.
ShootResult ode_shoot(const ModelParams &params, const Complex &f, double E, const ShootOptions &opts = {});

/// psi''_fd - (V - E) psi at x, with a central second difference of step
/// `step` and psi from the closed-form Sturmian with coefficients h.
Complex pointwise_ode_defect(const ModelParams &params, const Complex &f, double E, const std::vector<Complex> &h,
                             double x, double step);

} // namespace qes
