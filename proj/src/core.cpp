#include "qes/core.hpp"

namespace qes {

ModelParams::ModelParams(int N, Rational a, Rational c) : N_(N), a_(std::move(a)), c_(std::move(c)) {
  if (N < 0)
    throw std::domain_error("N must be non-negative");
}

Rational ModelParams::lambda() const {
  if (c_ == 0)
    throw std::domain_error("lambda = 1/c is undefined for c = 0");
  return Rational(1) / c_;
}

Rational energy(const ModelParams &params) { return 2 * params.N() + params.a() * params.a() + 3; }

} // namespace qes
