#include "guess/threshold.hpp"

#include "overloaded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace guess {

namespace {

using detail::overloaded;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t count_le(const family::DiscreteUniform& d, double x) {
  // Number of support integers <= x.
  if (x < static_cast<double>(d.lo)) return 0;
  if (x >= static_cast<double>(d.hi)) return d.hi - d.lo + 1;
  const auto fl = static_cast<std::int64_t>(std::floor(x));
  return fl - d.lo + 1;
}

}  // namespace

ThresholdDistribution::ThresholdDistribution(ThresholdFamily family, Probability p_minus,
                                             Probability p_plus)
    : family_(std::move(family)), p_minus_(p_minus), p_plus_(p_plus) {
  if (p_minus_ + p_plus_ > 1.0) {
    throw std::invalid_argument("infinity atoms exceed total mass");
  }
  std::visit(overloaded{
                 [](const family::PointMass& f) {
                   if (!std::isfinite(f.t)) throw std::invalid_argument("point mass must be finite");
                 },
                 [](const family::DiscreteUniform& f) {
                   if (f.lo > f.hi) throw std::invalid_argument("discrete uniform needs lo <= hi");
                 },
                 [](const family::ContinuousUniform& f) {
                   if (!(f.lo < f.hi)) throw std::invalid_argument("uniform needs lo < hi");
                 },
                 [](const family::Logistic& f) {
                   if (!(f.scale > 0.0)) throw std::invalid_argument("logistic scale must be positive");
                 },
                 [](const family::Normal& f) {
                   if (!(f.sd > 0.0)) throw std::invalid_argument("normal sd must be positive");
                 },
             },
             family_);
}

double ThresholdDistribution::family_cdf(double x) const {
  return std::visit(
      overloaded{
          [x](const family::PointMass& f) { return x >= f.t ? 1.0 : 0.0; },
          [x](const family::DiscreteUniform& f) {
            return static_cast<double>(count_le(f, x)) / static_cast<double>(f.hi - f.lo + 1);
          },
          [x](const family::ContinuousUniform& f) {
            return std::clamp((x - f.lo) / (f.hi - f.lo), 0.0, 1.0);
          },
          [x](const family::Logistic& f) {
            return 1.0 / (1.0 + std::exp(-(x - f.location) / f.scale));
          },
          [x](const family::Normal& f) {
            return 0.5 * std::erfc(-(x - f.mean) / (f.sd * std::sqrt(2.0)));
          },
      },
      family_);
}

double ThresholdDistribution::cdf(double x) const {
  if (x == kInf) return 1.0 - p_plus_;
  return p_minus_ + finite_mass() * family_cdf(x);
}

Rational ThresholdDistribution::cdf_exact(double x) const {
  const Rational pm = exact_rational(p_minus_);
  const Rational mass = Rational{1} - pm - exact_rational(p_plus_);
  const Rational inner = std::visit(
      overloaded{
          [x](const family::PointMass& f) { return Rational{x >= f.t ? 1 : 0}; },
          [x](const family::DiscreteUniform& f) {
            return make_rational(count_le(f, x), f.hi - f.lo + 1);
          },
          [this, x](const auto&) { return exact_rational(family_cdf(x)); },
      },
      family_);
  return pm + mass * inner;
}

double ThresholdDistribution::interval_prob(double a, double b) const {
  if (!(a < b)) return 0.0;
  const double inner = std::visit(
      overloaded{
          [a, b](const family::PointMass& f) { return (a < f.t && f.t <= b) ? 1.0 : 0.0; },
          [a, b](const family::DiscreteUniform& f) {
            // Integers j with a < j <= b inside [lo, hi].
            const double first = std::max(std::floor(a) + 1.0, static_cast<double>(f.lo));
            const double last = std::min(std::floor(b), static_cast<double>(f.hi));
            const double count = std::max(0.0, last - first + 1.0);
            return count / static_cast<double>(f.hi - f.lo + 1);
          },
          [a, b](const family::ContinuousUniform& f) {
            const double lo = std::max(a, f.lo);
            const double hi = std::min(b, f.hi);
            return hi > lo ? (hi - lo) / (f.hi - f.lo) : 0.0;
          },
          [this, a, b](const auto&) { return family_cdf(b) - family_cdf(a); },
      },
      family_);
  return finite_mass() * inner;
}

double ThresholdDistribution::sample(RngStream& rng) const {
  const double u = rng.uniform();
  if (u < p_minus_) return -kInf;
  if (u >= 1.0 - p_plus_) return kInf;
  return std::visit(
      overloaded{
          [](const family::PointMass& f) { return f.t; },
          [&rng](const family::DiscreteUniform& f) {
            return static_cast<double>(rng.integer(f.lo, f.hi));
          },
          [&rng](const family::ContinuousUniform& f) { return rng.uniform(f.lo, f.hi); },
          [&rng](const family::Logistic& f) {
            const double v = rng.uniform_open();
            return f.location + f.scale * std::log(v / (1.0 - v));
          },
          [&rng](const family::Normal& f) { return rng.normal(f.mean, f.sd); },
      },
      family_);
}

bool ThresholdDistribution::fully_supported() const {
  const bool family_full = std::holds_alternative<family::Logistic>(family_) ||
                           std::holds_alternative<family::Normal>(family_);
  return family_full && finite_mass() > 0.0;
}

bool ThresholdDistribution::discrete() const {
  return std::holds_alternative<family::PointMass>(family_) ||
         std::holds_alternative<family::DiscreteUniform>(family_);
}

std::string ThresholdDistribution::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&os](const family::PointMass& f) { os << "PointMass(" << f.t << ")"; },
                 [&os](const family::DiscreteUniform& f) {
                   os << "DiscreteUniform(" << f.lo << ", " << f.hi << ")";
                 },
                 [&os](const family::ContinuousUniform& f) {
                   os << "Uniform(" << f.lo << ", " << f.hi << ")";
                 },
                 [&os](const family::Logistic& f) {
                   os << "Logistic(" << f.location << ", " << f.scale << ")";
                 },
                 [&os](const family::Normal& f) { os << "Normal(" << f.mean << ", " << f.sd << ")"; },
             },
             family_);
  if (!proper()) os << " with atoms -inf:" << p_minus_.value() << " +inf:" << p_plus_.value();
  return os.str();
}

}  // namespace guess
