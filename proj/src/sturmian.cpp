#include "qes/sturmian.hpp"

#include <cmath>

namespace qes {

namespace {

template <class Cx> Cx imag_unit() {
  if constexpr (std::is_same_v<Cx, ComplexRational>)
    return ComplexRational::i();
  else
    return Cx(0.0, 1.0);
}

// Builds (x - ic) * [ -psi'' + (x^2 + 2iax - E) psi ] / e^S  +  i f u,
// where psi = e^S u, S = -x^2/2 - iax, u = (c + ix) phi(x).
template <class Cx>
Polynomial<Cx> residual_impl(const Cx &a, const Cx &c, const Cx &f, const Cx &E, const std::vector<Cx> &h) {
  using P = Polynomial<Cx>;
  const Cx i = imag_unit<Cx>();

  // phi(x) = sum h_n (ix)^n
  std::vector<Cx> phi_coeffs;
  Cx i_power = Cx(1);
  for (const auto &hn : h) {
    phi_coeffs.push_back(hn * i_power);
    i_power = i_power * i;
  }
  const P phi(phi_coeffs);
  const P x = P::monomial(1);
  const P u = P(std::vector<Cx>{c, i}) * phi;

  // psi'' / e^S = u'' + 2 S' u' + (S'' + S'^2) u
  const P dS = P(std::vector<Cx>{Cx(0) - i * a, Cx(-1)});
  const P ddS = P(Cx(-1));
  const P du = u.derivative();
  const P ddu = du.derivative();
  const P psi2 = ddu + P(Cx(2)) * dS * du + (ddS + dS * dS) * u;

  const P potential = x * x + P(std::vector<Cx>{Cx(0), Cx(2) * i * a}) - P(E);
  const P kinetic_and_oscillator = P{} - psi2 + potential * u;
  const P pole = P(std::vector<Cx>{Cx(0) - i * c, Cx(1)}); // x - ic
  return pole * kinetic_and_oscillator + P(i * f) * u;
}

} // namespace

double residual_norm(const ModelParams &params, const Complex &f, const std::vector<Complex> &h) {
  const auto Q = build_Q<Complex>(params, f);
  const auto r = Q.apply(h);
  double rmax = 0, hmax = 0;
  for (const auto &v : r)
    rmax = std::max(rmax, std::abs(v));
  for (const auto &v : h)
    hmax = std::max(hmax, std::abs(v));
  return hmax > 0 ? rmax / hmax : rmax;
}

double left_residual_norm(const ModelParams &params, const Complex &f, const std::vector<Complex> &g) {
  const auto Q = build_Q<Complex>(params, f);
  const auto r = Q.apply_left(g);
  double rmax = 0, gmax = 0;
  for (const auto &v : r)
    rmax = std::max(rmax, std::abs(v));
  for (const auto &v : g)
    gmax = std::max(gmax, std::abs(v));
  return gmax > 0 ? rmax / gmax : rmax;
}

namespace {

double ratio_of_max(const std::vector<HighPrecision> &num, const std::vector<HighPrecision> &den) {
  HighPrecision nmax = 0, dmax = 0;
  for (const auto &v : num)
    nmax = std::max(nmax, HighPrecision(abs(v)));
  for (const auto &v : den)
    dmax = std::max(dmax, HighPrecision(abs(v)));
  return static_cast<double>(dmax > 0 ? HighPrecision(nmax / dmax) : nmax);
}

} // namespace

double residual_norm_wide(const ModelParams &params, const HighPrecision &f) {
  const auto h = right_coefficients<HighPrecision>(params, f);
  return ratio_of_max(build_Q<HighPrecision>(params, f).apply(h), h);
}

double left_residual_norm_wide(const ModelParams &params, const HighPrecision &f) {
  const auto g = left_coefficients<HighPrecision>(params, f);
  return ratio_of_max(build_Q<HighPrecision>(params, f).apply_left(g), g);
}

std::vector<Complex> wavefunction_eval(const ModelParams &params, const std::vector<Complex> &h,
                                       std::span<const double> xs) {
  const double a = to_double(params.a());
  const double c = to_double(params.c());
  std::vector<Complex> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const Complex ix(0.0, x);
    Complex phi = 0;
    for (auto it = h.rbegin(); it != h.rend(); ++it)
      phi = phi * ix + *it;
    out.push_back((c + ix) * std::exp(Complex(-0.5 * x * x, -a * x)) * phi);
  }
  return out;
}

ComplexRationalPolynomial ode_residual(const ModelParams &params, const Rational &f, const Rational &E,
                                       const std::vector<Rational> &h) {
  std::vector<ComplexRational> hc(h.begin(), h.end());
  return residual_impl<ComplexRational>(params.a(), params.c(), f, E, hc);
}

FloatResidual ode_residual_float(const ModelParams &params, const Complex &f, double E,
                                 const std::vector<Complex> &h) {
  const Complex a = to_double(params.a());
  const Complex c = to_double(params.c());
  FloatResidual out;
  out.polynomial = residual_impl<Complex>(a, c, f, Complex(E), h);
  for (const auto &v : out.polynomial.coefficients())
    out.max_coefficient = std::max(out.max_coefficient, std::abs(v));
  // size of the individual contributions, for judging cancellation
  const auto coulomb_only = residual_impl<Complex>(a, c, f, Complex(E), h) -
                            residual_impl<Complex>(a, c, Complex(0), Complex(E), h);
  for (const auto &v : coulomb_only.coefficients())
    out.scale = std::max(out.scale, std::abs(v));
  return out;
}

} // namespace qes
