#pragma once

#include "qes/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qes {

/// The triple (N, a, c) of the screened oscillator. a and c are held as exact
/// rationals; a double converts to its exact binary value, so float input is
/// lossless and both numeric backends see the same parameters.
class ModelParams {
public:
  ModelParams(int N, Rational a, Rational c);
  ModelParams(int N, double a, double c) : ModelParams(N, Rational(a), Rational(c)) {}

  /// a = 0, c = d.
  static ModelParams from_d(int N, const Rational &d) { return {N, Rational(0), d}; }

  int N() const { return N_; }
  const Rational &a() const { return a_; }
  const Rational &c() const { return c_; }
  Rational d() const { return a_ + c_; }

  /// 1/c; throws std::domain_error when the pole sits on the real axis (c = 0).
  Rational lambda() const;

  std::size_t dimension() const { return static_cast<std::size_t>(N_) + 1; }

private:
  int N_;
  Rational a_;
  Rational c_;
};

/// E = 2N + a^2 + 3.
Rational energy(const ModelParams &params);

template <class T> struct RecurrenceCoefficients {
  T A; // multiplies h_{n-1}; unused for n = 0
  T B; // B_n(0) - f
  T C;
  T D;
};

/// Closed-form A_n, B_n(f), C_n, D_n for 0 <= n <= N. Values that fall outside
/// the matrix (A_0, C_N, D_{N-1}, D_N) are still returned.
template <class T>
RecurrenceCoefficients<T> recurrence_coefficients(const ModelParams &p, const T &f, int n) {
  if (n < 0 || n > p.N())
    throw std::domain_error("recurrence index out of range");
  const int N = p.N();
  const Rational A = -2 * (N + 1 - n);
  const Rational B0 = -2 * p.a() * (n + 1) - 2 * p.c() * (N + 1 - n);
  const Rational C = (n + 1) * ((n + 2) - 2 * p.a() * p.c());
  const Rational D = p.c() * (n + 1) * (n + 2);
  return {from_rational<T>(A), from_rational<T>(B0) - f, from_rational<T>(C), from_rational<T>(D)};
}

/// Square band matrix with one subdiagonal and two superdiagonals, generic
/// over the entry ring (exact rationals, doubles, complex doubles, or
/// polynomials for symbolic determinants).
///
/// Bands are stored per row: sub[n] = M(n, n-1), diag[n] = M(n, n),
/// super1[n] = M(n, n+1), super2[n] = M(n, n+2). Slots that would fall outside
/// the matrix are kept at zero.
template <class T> class QuadridiagonalMatrix {
public:
  explicit QuadridiagonalMatrix(std::size_t size)
      : sub_(size, T{}), diag_(size, T{}), super1_(size, T{}), super2_(size, T{}) {}

  std::size_t size() const { return diag_.size(); }

  T operator()(std::size_t i, std::size_t j) const {
    if (i < size() && j < size()) {
      if (j + 1 == i)
        return sub_[i];
      if (j == i)
        return diag_[i];
      if (j == i + 1)
        return super1_[i];
      if (j == i + 2)
        return super2_[i];
    }
    return T{};
  }

  const T &sub(std::size_t n) const { return sub_[n]; }
  const T &diag(std::size_t n) const { return diag_[n]; }
  const T &super1(std::size_t n) const { return super1_[n]; }
  const T &super2(std::size_t n) const { return super2_[n]; }

  void set_sub(std::size_t n, T v) { if (n >= 1) sub_[n] = std::move(v); }
  void set_diag(std::size_t n, T v) { diag_[n] = std::move(v); }
  void set_super1(std::size_t n, T v) { if (n + 1 < size()) super1_[n] = std::move(v); }
  void set_super2(std::size_t n, T v) { if (n + 2 < size()) super2_[n] = std::move(v); }

  /// this - shift*I
  QuadridiagonalMatrix shifted(const T &shift) const {
    QuadridiagonalMatrix out = *this;
    for (auto &v : out.diag_)
      v = v - shift;
    return out;
  }

  /// Entrywise image under `fn`, e.g. to change backend.
  template <class U, class Fn> QuadridiagonalMatrix<U> map(Fn fn) const {
    QuadridiagonalMatrix<U> out(size());
    for (std::size_t n = 0; n < size(); ++n) {
      out.set_sub(n, fn(sub_[n]));
      out.set_diag(n, fn(diag_[n]));
      out.set_super1(n, fn(super1_[n]));
      out.set_super2(n, fn(super2_[n]));
    }
    return out;
  }

  /// M v
  template <class V> std::vector<V> apply(const std::vector<V> &v) const {
    std::vector<V> out(size(), V{});
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = (i == 0 ? 0 : i - 1); j <= i + 2 && j < size(); ++j)
        out[i] += V((*this)(i, j)) * v[j];
    return out;
  }

  /// v^T M
  template <class V> std::vector<V> apply_left(const std::vector<V> &v) const {
    std::vector<V> out(size(), V{});
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = (i == 0 ? 0 : i - 1); j <= i + 2 && j < size(); ++j)
        out[j] += v[i] * V((*this)(i, j));
    return out;
  }

  /// P_0 = 1, P_k = det of the leading k x k block, k = 0..size(). Uses the
  /// three-term expansion valid for lower bandwidth one:
  ///   P_{k+1} = B_k P_k - A_k C_{k-1} P_{k-1} + A_k A_{k-1} D_{k-2} P_{k-2}.
  /// Division free, so it works over any commutative ring.
  std::vector<T> leading_minors() const {
    std::vector<T> P;
    P.reserve(size() + 1);
    P.push_back(T(1));
    for (std::size_t k = 0; k < size(); ++k) {
      T next = diag_[k] * P[k];
      if (k >= 1)
        next = next - sub_[k] * super1_[k - 1] * P[k - 1];
      if (k >= 2)
        next = next + sub_[k] * sub_[k - 1] * super2_[k - 2] * P[k - 2];
      P.push_back(std::move(next));
    }
    return P;
  }

  /// T_0 = 1, T_k = det of the trailing k x k block (rows/columns size()-k ..
  /// size()-1). The exchange-transposed matrix J M^T J has the same band shape
  /// and maps trailing blocks onto leading ones.
  std::vector<T> trailing_minors() const { return exchange_transpose().leading_minors(); }

  T determinant() const { return leading_minors().back(); }

  QuadridiagonalMatrix exchange_transpose() const {
    const std::size_t n = size();
    QuadridiagonalMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= 1)
        out.set_sub(i, sub_[n - i]);
      out.set_diag(i, diag_[n - 1 - i]);
      if (i + 2 <= n)
        out.set_super1(i, super1_[n - 2 - i]);
      if (i + 3 <= n)
        out.set_super2(i, super2_[n - 3 - i]);
    }
    return out;
  }

  std::vector<std::vector<T>> dense() const {
    std::vector<std::vector<T>> out(size(), std::vector<T>(size(), T{}));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        out[i][j] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const QuadridiagonalMatrix &x, const QuadridiagonalMatrix &y) {
    return x.sub_ == y.sub_ && x.diag_ == y.diag_ && x.super1_ == y.super1_ && x.super2_ == y.super2_;
  }

private:
  std::vector<T> sub_, diag_, super1_, super2_;
};

/// Q(f): row n holds A_n at n-1, B_n(f) at n, C_n at n+1, D_n at n+2.
template <class T> QuadridiagonalMatrix<T> build_Q(const ModelParams &p, const T &f) {
  QuadridiagonalMatrix<T> Q(p.dimension());
  for (int n = 0; n <= p.N(); ++n) {
    auto coeff = recurrence_coefficients<T>(p, f, n);
    const auto k = static_cast<std::size_t>(n);
    Q.set_sub(k, coeff.A);
    Q.set_diag(k, coeff.B);
    Q.set_super1(k, coeff.C);
    Q.set_super2(k, coeff.D);
  }
  return Q;
}

template <class T> QuadridiagonalMatrix<T> build_Q(const ModelParams &p) { return build_Q<T>(p, T{}); }

} // namespace qes
