#pragma once

#include <functional>
#include <span>

namespace guess::quad {

struct Result {
  double value;
  double error;  // absolute error estimate
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod on [a, b]; either bound may be infinite. `breaks`
/// are interior points where the integrand has kinks or jumps; each piece
/// is integrated separately.
Result integrate(const Integrand& f, double a, double b, double rel_tol = 1e-11,
                 std::span<const double> breaks = {});

/// Integral over [a, inf) for slowly decaying integrands, using the
/// exp-sinh rule.
Result integrate_to_infinity(const Integrand& f, double a, double rel_tol = 1e-11);

/// Throws QuadratureNonconvergence when error > rel_tol * |value| (or
/// > rel_tol when the value is tiny).
double checked(const Result& r, double rel_tol, const char* what);

}  // namespace guess::quad
