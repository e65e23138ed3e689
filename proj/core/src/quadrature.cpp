#include "longmem/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "longmem/errors.hpp"

namespace longmem {

namespace {
constexpr unsigned kMaxDepth = 18;
}

double integrate(const Integrand& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, kMaxDepth, rel_tol, &err);
}

double integrate_singular_at_zero(const Integrand& f, double alpha, double b,
                                  double rel_tol) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("integrate_singular_at_zero: exponent must lie in [0, 1)");
  }
  if (!(b > 0.0)) throw ArgumentError("integrate_singular_at_zero: b must be positive");

  const double split = std::min(b, 0.5);
  const double p = 1.0 / (1.0 - alpha);
  const double u_max = std::pow(split, 1.0 - alpha);

  auto inner = [&](double u) {
    if (u <= 0.0) u = std::numeric_limits<double>::min();
    const double lambda = std::pow(u, p);
    return f(lambda) * p * std::pow(u, p - 1.0);
  };
  double total = integrate(inner, 0.0, u_max, rel_tol);
  if (split < b) total += integrate(f, split, b, rel_tol);
  return total;
}

}  // namespace longmem
