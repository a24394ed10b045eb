#include "qes/verify.hpp"

#include "qes/spectra.hpp"
#include "qes/sturmian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qes {

double multiset_distance(const std::vector<Complex> &a, const std::vector<Complex> &b) {
  if (a.size() != b.size())
    return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0;
  for (const auto &x : a) {
    std::size_t best = b.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(x - b[j]) < best_dist) {
        best_dist = std::abs(x - b[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, best_dist / std::max(1.0, std::abs(x)));
  }
  return worst;
}

ShiftReport shift_invariance_check(const ModelParams &params, const Rational &delta, double tol) {
  const Rational a2 = params.a() + delta;
  ModelParams shifted(params.N(), a2, params.c() - delta);
  ShiftReport r{params, shifted, eigencharges(params).charges, eigencharges(shifted).charges};
  r.distance = multiset_distance(r.charges_original, r.charges_shifted);
  r.energy_consistent = energy(shifted) - energy(params) == a2 * a2 - params.a() * params.a();
  r.pass = r.distance <= tol && r.energy_consistent;
  return r;
}

// ---------------------------------------------------------------------------

void PolyOperator::add(int order, const RationalPolynomial &p) {
  auto &slot = terms_[order];
  slot += p;
  if (slot.is_zero())
    terms_.erase(order);
}

PolyOperator PolyOperator::scalar(const Rational &s) { return multiply(RationalPolynomial(s)); }

PolyOperator PolyOperator::multiply(const RationalPolynomial &p) {
  PolyOperator op;
  op.add(0, p);
  return op;
}

PolyOperator PolyOperator::derivative() {
  PolyOperator op;
  op.add(1, RationalPolynomial(Rational(1)));
  return op;
}

int PolyOperator::degree_raise() const {
  if (terms_.empty())
    return 0;
  int raise = std::numeric_limits<int>::min();
  for (const auto &[k, p] : terms_)
    raise = std::max(raise, p.degree() - k);
  return raise;
}

RationalPolynomial PolyOperator::apply(const RationalPolynomial &p) const {
  RationalPolynomial out;
  for (const auto &[k, coeff] : terms_) {
    RationalPolynomial dp = p;
    for (int i = 0; i < k; ++i)
      dp = dp.derivative();
    out += coeff * dp;
  }
  return out;
}

RationalMatrix PolyOperator::matrix(int D) const {
  const auto n = static_cast<std::size_t>(D) + 1;
  RationalMatrix m(n, RationalVector(n, Rational(0)));
  for (int j = 0; j <= D; ++j) {
    const auto image = apply(RationalPolynomial::monomial(j));
    for (int i = 0; i <= std::min(D, image.degree()); ++i)
      m[i][j] = image[i];
  }
  return m;
}

int PolyOperator::exact_columns(int D) const { return std::max(0, D + 1 - std::max(0, degree_raise())); }

PolyOperator &PolyOperator::operator+=(const PolyOperator &o) {
  for (const auto &[k, p] : o.terms_)
    add(k, p);
  return *this;
}

PolyOperator &PolyOperator::operator-=(const PolyOperator &o) {
  for (const auto &[k, p] : o.terms_)
    add(k, -p);
  return *this;
}

PolyOperator operator*(const Rational &s, const PolyOperator &a) {
  PolyOperator out;
  for (const auto &[k, p] : a.terms_)
    out.add(k, RationalPolynomial(s) * p);
  return out;
}

PolyOperator operator*(const PolyOperator &a, const PolyOperator &b) {
  // p d^k q d^l = p sum_m C(k, m) q^(m) d^(k+l-m)
  PolyOperator out;
  for (const auto &[k, p] : a.terms_)
    for (const auto &[l, q] : b.terms_) {
      RationalPolynomial dq = q;
      Rational binom = 1;
      for (int m = 0; m <= k; ++m) {
        if (dq.is_zero())
          break;
        out.add(k + l - m, RationalPolynomial(binom) * p * dq);
        dq = dq.derivative();
        binom = binom * (k - m) / (m + 1);
      }
    }
  return out;
}

std::string PolyOperator::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, p] : terms_) {
    if (!first)
      os << " + ";
    first = false;
    os << "(" << qes::to_string(p, "y") << ")";
    if (k == 1)
      os << "*D";
    else if (k > 1)
      os << "*D^" << k;
  }
  return os.str();
}

PolyOperator commutator(const PolyOperator &a, const PolyOperator &b) { return a * b - b * a; }

// ---------------------------------------------------------------------------

Sl2Generators generators(int N, const Rational &c, GeneratorConvention convention) {
  const RationalPolynomial z(std::vector<Rational>{c, Rational(1)});
  const PolyOperator d = PolyOperator::derivative();
  const Rational j0_shift = convention == GeneratorConvention::Printed ? Rational(N) : make_rational(N, 2);
  const Rational jp_shift = convention == GeneratorConvention::Printed ? Rational(2 * N) : Rational(N);
  return {d, PolyOperator::multiply(z) * d - PolyOperator::scalar(j0_shift),
          PolyOperator::multiply(z * z) * d - PolyOperator::multiply(RationalPolynomial(jp_shift) * z)};
}

namespace {

RationalMatrix subtract(const RationalMatrix &x, const RationalMatrix &y) {
  RationalMatrix out = x;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x[i].size(); ++j)
      out[i][j] -= y[i][j];
  return out;
}

bool columns_equal(const RationalMatrix &x, const RationalMatrix &y, int columns) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int j = 0; j < columns; ++j)
      if (x[i][j] != y[i][j])
        return false;
  return true;
}

} // namespace

Sl2Report sl2_commutator_check(int N, const Rational &c, int D) {
  if (D < N + 3)
    throw std::invalid_argument("D must be at least N + 3");
  const auto J = generators(N, c, GeneratorConvention::Printed);
  struct Relation {
    const PolyOperator &x, &y;
    PolyOperator rhs;
  };
  const std::array<Relation, 3> relations{{{J.minus, J.zero, J.minus},
                                            {J.minus, J.plus, Rational(2) * J.zero},
                                            {J.zero, J.plus, J.plus}}};
  Sl2Report r;
  r.N = N;
  r.c = c;
  r.D = D;
  r.exact_columns = D + 1;
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const auto &rel = relations[i];
    r.operator_identity[i] = commutator(rel.x, rel.y) == rel.rhs;
    const int columns =
        std::max(0, D + 1 - std::max(0, rel.x.degree_raise()) - std::max(0, rel.y.degree_raise()));
    r.exact_columns = std::min(r.exact_columns, columns);
    const auto X = rel.x.matrix(D), Y = rel.y.matrix(D);
    r.matrix_identity[i] = columns_equal(subtract(multiply(X, Y), multiply(Y, X)), rel.rhs.matrix(D), columns);
  }
  r.pass = true;
  for (std::size_t i = 0; i < 3; ++i)
    r.pass = r.pass && r.operator_identity[i] && r.matrix_identity[i];
  return r;
}

PolyOperator recurrence_operator(int N, const Rational &c) {
  const RationalPolynomial y = RationalPolynomial::monomial(1);
  const RationalPolynomial z(std::vector<Rational>{c, Rational(1)});
  const PolyOperator d = PolyOperator::derivative();
  return PolyOperator::multiply(z) * d * d + Rational(2) * d + PolyOperator::multiply(Rational(2) * y * z) * d -
         PolyOperator::multiply(RationalPolynomial(std::vector<Rational>{2 * c * (N + 1), Rational(2 * N)}));
}

PolyOperator printed_hamiltonian(int N, const Rational &c) {
  const auto J = generators(N, c, GeneratorConvention::Printed);
  return J.zero * J.minus + Rational(2) * J.plus - Rational(2 * c) * J.zero + Rational(N + 2) * J.minus -
         PolyOperator::scalar(2 * (N + c));
}

LieDecomposition lie_decompose(int N, const Rational &c, GeneratorConvention convention) {
  const auto J = generators(N, c, convention);
  const std::array<PolyOperator, 5> basis{J.zero * J.minus, J.plus, J.zero, J.minus,
                                          PolyOperator::scalar(Rational(1))};
  const PolyOperator T = recurrence_operator(N, c);

  // flatten each operator to coefficients keyed by (derivative order, power)
  std::map<std::pair<int, int>, std::size_t> index;
  auto collect = [&](const PolyOperator &op) {
    for (const auto &[k, p] : op.terms())
      for (int m = 0; m <= p.degree(); ++m)
        index.emplace(std::make_pair(k, m), index.size());
  };
  for (const auto &b : basis)
    collect(b);
  collect(T);
  auto flatten = [&](const PolyOperator &op) {
    RationalVector v(index.size(), Rational(0));
    for (const auto &[k, p] : op.terms())
      for (int m = 0; m <= p.degree(); ++m)
        v[index.at({k, m})] = p[m];
    return v;
  };
  std::vector<RationalVector> cols;
  for (const auto &b : basis)
    cols.push_back(flatten(b));
  const RationalVector rhs = flatten(T);

  // normal equations A^T A x = A^T b
  RationalMatrix AtA(5, RationalVector(5, Rational(0)));
  RationalMatrix Atb(5, RationalVector(1, Rational(0)));
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j)
      for (std::size_t r = 0; r < rhs.size(); ++r)
        AtA[i][j] += cols[i][r] * cols[j][r];
    for (std::size_t r = 0; r < rhs.size(); ++r)
      Atb[i][0] += cols[i][r] * rhs[r];
  }
  const auto x = multiply(inverse(AtA), Atb);

  LieDecomposition out;
  out.convention = convention;
  PolyOperator fit;
  for (std::size_t i = 0; i < 5; ++i) {
    out.coefficients[i] = x[i][0];
    fit += x[i][0] * basis[i];
  }
  out.residual = T - fit;
  out.exact = out.residual.is_zero();
  out.printed_residual = T - printed_hamiltonian(N, c);
  out.matches_printed = out.printed_residual.is_zero();
  return out;
}

// ---------------------------------------------------------------------------

AsymptoticBC asymptotic_bc(const ModelParams &params, double E, double x_max, int direction) {
  const double a = to_double(params.a());
  const double x = direction * x_max;
  const Complex b = (E - a * a - 1.0) / 2.0;
  const Complex log_derivative = -x - Complex(0.0, a) + b / x;
  return {x_max, direction, b, Complex(1.0), log_derivative};
}

namespace {

struct State {
  Complex psi, dpsi;
};

State integrate_to_origin(const ModelParams &params, const Complex &f, double E, double x_max, int steps,
                          int direction) {
  const double a = to_double(params.a());
  const double c = to_double(params.c());
  const auto bc = asymptotic_bc(params, E, x_max, direction);
  auto rhs = [&](double x, const State &s) {
    const Complex V = x * x + Complex(0.0, 2.0 * a * x) + Complex(0.0, 1.0) * f / Complex(x, -c);
    return State{s.dpsi, (V - E) * s.psi};
  };
  const double h = -direction * x_max / steps;
  State s{bc.value, bc.derivative};
  double x = direction * x_max;
  for (int i = 0; i < steps; ++i) {
    const State k1 = rhs(x, s);
    const State k2 = rhs(x + h / 2, {s.psi + h / 2 * k1.psi, s.dpsi + h / 2 * k1.dpsi});
    const State k3 = rhs(x + h / 2, {s.psi + h / 2 * k2.psi, s.dpsi + h / 2 * k2.dpsi});
    const State k4 = rhs(x + h, {s.psi + h * k3.psi, s.dpsi + h * k3.dpsi});
    s.psi += h / 6 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi);
    s.dpsi += h / 6 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi);
    x = direction * x_max + (i + 1) * h;
    const double size = std::abs(s.psi) + std::abs(s.dpsi);
    if (!std::isfinite(size)) {
      std::ostringstream os;
      os << "integration overflow at x = " << x << " (direction " << direction << ", x_max " << x_max
         << ", steps " << steps << ")";
      throw ShootingError(os.str());
    }
    if (size > 1e100) {
      s.psi /= size;
      s.dpsi /= size;
    }
  }
  return s;
}

} // namespace

Complex shoot_defect(const ModelParams &params, const Complex &f, double E, double x_max, int steps) {
  if (params.c() == 0)
    throw std::domain_error("shooting needs c != 0");
  if (!(x_max > 0) || steps <= 0)
    throw std::invalid_argument("x_max and steps must be positive");
  const State L = integrate_to_origin(params, f, E, x_max, steps, -1);
  const State R = integrate_to_origin(params, f, E, x_max, steps, +1);
  const double norm = std::abs(L.psi * R.psi);
  if (norm == 0)
    throw ShootingError("wavefunction vanishes at the matching point");
  return (L.psi * R.dpsi - R.psi * L.dpsi) / norm;
}

ShootResult ode_shoot(const ModelParams &params, const Complex &f, double E, const ShootOptions &opts) {
  double x_max = opts.x_max > 0 ? opts.x_max : std::sqrt(std::max(E, 0.0)) + 6.0;
  int steps = opts.steps > 0 ? opts.steps : static_cast<int>(std::ceil(200 * x_max));

  auto richardson = [&](double X, int n) {
    const Complex coarse = shoot_defect(params, f, E, X, n);
    const Complex fine = shoot_defect(params, f, E, X, 2 * n);
    return ShootResult{fine + (fine - coarse) / 15.0, std::abs(fine - coarse) / 15.0, X, n, 0, false};
  };

  ShootResult current = richardson(x_max, steps);
  for (int k = 1; k <= opts.max_doublings; ++k) {
    ShootResult next = richardson(2 * current.x_max, 2 * current.steps);
    next.doublings = k;
    const double change = std::abs(next.defect - current.defect);
    current = next;
    if (change <= opts.stabilize_tol * std::max(1.0, std::abs(current.defect))) {
      current.stabilized = true;
      break;
    }
  }
  return current;
}

Complex pointwise_ode_defect(const ModelParams &params, const Complex &f, double E, const std::vector<Complex> &h,
                             double x, double step) {
  const std::array<double, 3> xs{x - step, x, x + step};
  const auto psi = wavefunction_eval(params, h, xs);
  const double a = to_double(params.a());
  const double c = to_double(params.c());
  const Complex V = x * x + Complex(0.0, 2.0 * a * x) + Complex(0.0, 1.0) * f / Complex(x, -c);
  const Complex second = (psi[2] - 2.0 * psi[1] + psi[0]) / (step * step);
  return second - (V - E) * psi[1];
}

} // namespace qes
