#include "guess/coverage.hpp"

#include "overloaded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace guess {

using detail::overloaded;

LatticeRandomSet::LatticeRandomSet(std::int64_t lo, std::vector<double> values)
    : lo_(lo), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("lattice window is empty");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("lattice coverage outside [0, 1]");
  }
}

double LatticeRandomSet::operator()(std::int64_t site) const {
  const std::int64_t i = std::clamp(site, lo_, hi()) - lo_;
  return values_[static_cast<std::size_t>(i)];
}

PoissonIntensity PoissonIntensity::homogeneous(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("Poisson rate must be positive");
  return {Shape::homogeneous, rate};
}

PoissonIntensity PoissonIntensity::exponential() { return {Shape::exponential, 1.0}; }

double PoissonIntensity::at(double t) const {
  return shape == Shape::homogeneous ? rate : std::exp(t);
}

double PoissonIntensity::mean_count(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  if (shape == Shape::homogeneous) return rate * (hi - lo);
  // int_lo^hi e^t dt = e^hi (1 - e^(lo - hi))
  return std::exp(hi) * -std::expm1(lo - hi);
}

CoverageFunction::CoverageFunction(Kind kind, CoverageFlags flags)
    : kind_(std::move(kind)), flags_(flags) {}

double CoverageFunction::operator()(double x) const {
  return std::visit(
      overloaded{
          [](const kind::Constant& k) { return k.p; },
          [x](const kind::StepThreshold& k) { return x >= k.t ? 1.0 : 0.0; },
          [x](const kind::DistributionCdf& k) { return k.dist.cdf(x); },
          [x](const kind::PiecewiseLinear& k) {
            const auto& kn = k.knots;
            if (x <= kn.front().first) return kn.front().second;
            if (x >= kn.back().first) return kn.back().second;
            const auto it = std::upper_bound(kn.begin(), kn.end(), x,
                                             [](double v, const auto& p) { return v < p.first; });
            const auto& [x1, y1] = *it;
            const auto& [x0, y0] = *(it - 1);
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
          },
          [x](const kind::DualOf& k) { return 1.0 - (*k.inner)(x); },
          [x](const kind::Mixture& k) {
            return k.gamma * (*k.first)(x) + (1.0 - k.gamma) * (*k.second)(x);
          },
          [x](const kind::PoissonCoverage& k) {
            return -std::expm1(-k.intensity.mean_count(x - 1.0, x));
          },
          [x](const kind::LatticeTable& k) {
            if (!std::isfinite(x)) return x > 0 ? k.set(k.set.hi()) : k.set(k.set.lo());
            return k.set(static_cast<std::int64_t>(std::floor(x)));
          },
      },
      kind_);
}

std::string CoverageFunction::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&os](const kind::Constant& k) { os << "Constant(" << k.p << ")"; },
                 [&os](const kind::StepThreshold& k) { os << "StepThreshold(" << k.t << ")"; },
                 [&os](const kind::DistributionCdf& k) { os << "CDF[" << k.dist.describe() << "]"; },
                 [&os](const kind::PiecewiseLinear& k) {
                   os << "PiecewiseLinear(" << k.knots.size() << " knots)";
                 },
                 [&os](const kind::DualOf& k) { os << "Dual[" << k.inner->describe() << "]"; },
                 [&os](const kind::Mixture& k) {
                   os << "Mixture(" << k.gamma << "; " << k.first->describe() << ", "
                      << k.second->describe() << ")";
                 },
                 [&os](const kind::PoissonCoverage& k) {
                   if (k.intensity.shape == PoissonIntensity::Shape::homogeneous) {
                     os << "Poisson(rate " << k.intensity.rate << ")";
                   } else {
                     os << "Poisson(intensity e^t)";
                   }
                 },
                 [&os](const kind::LatticeTable& k) {
                   os << "Lattice[" << k.set.lo() << ", " << k.set.hi() << "]";
                 },
             },
             kind_);
  return os.str();
}

}  // namespace guess
