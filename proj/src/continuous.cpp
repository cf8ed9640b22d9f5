#include "guess/bob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace guess::bob {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ContinuousBobStrategy location_uniform(double m) {
  if (!(m > 0.0)) throw std::invalid_argument("location range m must be positive");
  ContinuousBobStrategy s;
  std::ostringstream os;
  os << "location mixture B + U, B ~ U[-" << m << ", " << m << "]";
  s.description = os.str();
  s.sampler = [m](RngStream& rng) {
    const double b = rng.uniform(-m, m);
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return ContinuousDraw{{b + u1, b + u2}, b};
  };
  // Given X = x the location is uniform on I = [max(x-1, -m), min(x, m)] and
  // P(Y < x | B) = x - B, so pi(x) = x - midpoint(I).
  s.analytic_pi = [m](double x) {
    if (x <= -m) return 0.0;
    if (x >= m + 1.0) return 1.0;
    const double lo = std::max(x - 1.0, -m);
    const double hi = std::min(x, m);
    return std::clamp(x - 0.5 * (lo + hi), 0.0, 1.0);
  };
  s.marginal_density = [m](double x) {
    const double len = std::min(x, m) - std::max(x - 1.0, -m);
    return len > 0.0 ? len / (2.0 * m) : 0.0;
  };
  std::vector<double> breaks{-m + 1.0, m};
  std::sort(breaks.begin(), breaks.end());
  s.support = Support{-m, m + 1.0, breaks, false};
  return s;
}

double scale_uniform_inverse_cdf(double m, double u) { return std::pow(m, 2.0 * u - 1.0); }

ContinuousBobStrategy scale_uniform_twocards(double m) {
  if (!(m > 1.0)) throw std::invalid_argument("scale range m must exceed 1");
  ContinuousBobStrategy s;
  std::ostringstream os;
  os << "scale mixture A U, log A ~ U[-log " << m << ", log " << m << "]";
  s.description = os.str();
  const double log_m = std::log(m);
  s.sampler = [m](RngStream& rng) {
    const double a = scale_uniform_inverse_cdf(m, rng.uniform());
    const double u1 = rng.uniform_open();
    const double u2 = rng.uniform_open();
    return ContinuousDraw{{a * u1, a * u2}, a};
  };
  // Posterior of A given X = x is proportional to a^-2 on (L, m) with
  // L = max(x, 1/m); P(Y < x | A = a) = x / a.
  s.analytic_pi = [m](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= m) return 1.0;
    const double l = std::max(x, 1.0 / m);
    return std::clamp(0.5 * x * (1.0 / l + 1.0 / m), 0.0, 1.0);
  };
  s.marginal_density = [m, log_m](double x) {
    if (x <= 0.0 || x >= m) return 0.0;
    const double l = std::max(x, 1.0 / m);
    return (1.0 / l - 1.0 / m) / (2.0 * log_m);
  };
  s.support = Support{0.0, m, {1.0 / m}, true};
  return s;
}

ContinuousBobStrategy iid_uniform_pair() {
  ContinuousBobStrategy s;
  s.description = "iid uniform [0, 1] pair";
  s.sampler = [](RngStream& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return ContinuousDraw{{u1, u2}, kNaN};
  };
  s.analytic_pi = [](double x) { return std::clamp(x, 0.0, 1.0); };
  s.marginal_density = [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; };
  s.support = Support{0.0, 1.0, {}, false};
  return s;
}

ContinuousBobStrategy arrangement_closest_to_half() {
  ContinuousBobStrategy s;
  s.description = "iid uniform pair, shown number closer to 1/2";
  s.sampler = [](RngStream& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const bool first_closer = std::abs(u1 - 0.5) <= std::abs(u2 - 0.5);
    return first_closer ? ContinuousDraw{{u1, u2}, kNaN} : ContinuousDraw{{u2, u1}, kNaN};
  };
  // The hidden number is uniform outside the symmetric band around 1/2
  // through the shown one, so it is equally likely to lie on either side.
  s.analytic_pi = [](double) { return 0.5; };
  s.marginal_density = [](double x) {
    return (x >= 0.0 && x <= 1.0) ? 2.0 * (1.0 - 2.0 * std::abs(x - 0.5)) : 0.0;
  };
  s.support = Support{0.0, 1.0, {0.5}, false};
  s.exchangeable = false;
  return s;
}

}  // namespace guess::bob
