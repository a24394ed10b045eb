#pragma once

#include "qes/core.hpp"
#include "qes/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qes {

inline constexpr double kDefaultRealityTol = 1e-9;

/// The N+1 eigencharges of one parameter point, sorted by real part and then
/// imaginary part.
struct EigenchargeSet {
  ModelParams params;
  std::vector<Complex> charges;
  std::vector<bool> real; // |Im f| <= tol (1 + |f|)
  double tol;

  bool all_real() const;
  std::size_t real_count() const;
};

/// Thrown when the dense eigensolve fails; what() carries the matrix.
class EigensolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues of Q(0), each refined by one guarded Newton step on the exact
/// secular polynomial.
EigenchargeSet eigencharges(const ModelParams &params, double tol = kDefaultRealityTol);

/// Newton iteration on `poly` in 50-digit arithmetic, started from a real
/// guess. Used where double precision is not enough to resolve an error.
HighPrecision polish_real_charge(const RationalPolynomial &poly, double guess);

struct ScanPoint {
  double d;
  bool all_real;
};

struct CriticalScreening {
  double d;                      // infimum of the all-real ray d > d*
  std::vector<ScanPoint> trace;  // every predicate evaluation, in order
};

class BracketError : public std::runtime_error {
public:
  BracketError(const std::string &what, std::vector<ScanPoint> trace)
      : std::runtime_error(what), trace(std::move(trace)) {}
  std::vector<ScanPoint> trace;
};

/// Smallest d such that all eigencharges at (N, a = 0, c = d') are real for
/// every d' > d. Grows the bracket geometrically from [1, 8], scans it for a
/// single false->true transition, then bisects to width `tol`.
CriticalScreening critical_d(int N, double tol = 1e-9);

/// Leading large-|c| estimates f_n = c (Y_n - N - 2), Y_n = N - 2n, n = 0..N.
std::vector<double> asymptotic_charges(int N, double c);

/// Real charges followed from c_from to c_to (a = 0) on a uniform grid.
struct ChargeTrack {
  std::vector<double> c_values;
  std::vector<std::vector<double>> roots; // roots[step][n]
  bool continuous = true;                 // every step moved each root by < half the local gap
  bool lost_root = false;                 // a tracked root went complex
};

ChargeTrack track_charges(int N, double c_from, double c_to, int steps);

} // namespace qes
