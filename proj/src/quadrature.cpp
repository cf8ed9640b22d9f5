#include "guess/quadrature.hpp"

#include "guess/types.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace guess::quad {

namespace {

constexpr unsigned kMaxDepth = 30;

Result gk(const Integrand& f, double a, double b, double rel_tol) {
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, kMaxDepth, rel_tol, &error);
  return {value, error};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, double rel_tol,
                 std::span<const double> breaks) {
  if (a == b) return {0.0, 0.0};
  if (a > b) {
    const Result r = integrate(f, b, a, rel_tol, breaks);
    return {-r.value, r.error};
  }
  std::vector<double> cuts{a};
  for (double c : breaks) {
    if (c > a && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Result total{0.0, 0.0};
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const Result piece = gk(f, cuts[i - 1], cuts[i], rel_tol);
    total.value += piece.value;
    total.error += piece.error;
  }
  return total;
}

Result integrate_to_infinity(const Integrand& f, double a, double rel_tol) {
  boost::math::quadrature::exp_sinh<double> integrator(12);
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(
      [&f, a](double t) { return f(a + t); }, rel_tol, &error, &l1);
  return {value, error};
}

double checked(const Result& r, double rel_tol, const char* what) {
  const double scale = std::max(std::abs(r.value), 1.0e-300);
  if (!std::isfinite(r.value) || r.error > rel_tol * std::max(scale, 1e-12)) {
    throw QuadratureNonconvergence(std::string(what) + ": value " + std::to_string(r.value) +
                                   ", error " + std::to_string(r.error));
  }
  return r.value;
}

}  // namespace guess::quad
