#pragma once

#include "guess/threshold.hpp"
#include "guess/types.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace guess {

class CoverageFunction;
using CoveragePtr = std::shared_ptr<const CoverageFunction>;

/// Coverage values on an integer window [lo, hi]; sites outside the window
/// take the value of the nearest endpoint.
class LatticeRandomSet {
 public:
  LatticeRandomSet(std::int64_t lo, std::vector<double> values);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
  const std::vector<double>& values() const { return values_; }
  double operator()(std::int64_t site) const;

 private:
  std::int64_t lo_;
  std::vector<double> values_;
};

/// Intensity of the Poisson process whose atoms start the unit intervals of
/// the decision set P + [0, 1].
struct PoissonIntensity {
  enum class Shape : std::uint8_t { homogeneous, exponential };
  Shape shape = Shape::homogeneous;
  double rate = 1.0;  // homogeneous only

  static PoissonIntensity homogeneous(double rate);
  static PoissonIntensity exponential();

  double at(double t) const;
  /// Mean number of atoms in [lo, hi].
  double mean_count(double lo, double hi) const;
};

namespace kind {
struct Constant {
  double p;
};
struct StepThreshold {
  double t;
};
struct DistributionCdf {
  ThresholdDistribution dist;
};
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
};
struct DualOf {
  CoveragePtr inner;
};
/// gamma * first + (1 - gamma) * second.
struct Mixture {
  double gamma;
  CoveragePtr first;
  CoveragePtr second;
};
struct PoissonCoverage {
  PoissonIntensity intensity;
};
struct LatticeTable {
  LatticeRandomSet set;
};
}  // namespace kind

struct CoverageFlags {
  Tri nondecreasing = Tri::unknown;
  Tri strictly_increasing = Tri::unknown;
  Tri proper = Tri::unknown;
};

/// Accept-probability function F of a guessing strategy: the number x is
/// accepted as the larger with probability F(x).
class CoverageFunction {
 public:
  using Kind = std::variant<kind::Constant, kind::StepThreshold,
                            kind::DistributionCdf, kind::PiecewiseLinear,
                            kind::DualOf, kind::Mixture, kind::PoissonCoverage,
                            kind::LatticeTable>;

  CoverageFunction(Kind kind, CoverageFlags flags);

  double operator()(double x) const;

  const Kind& kind() const { return kind_; }
  const CoverageFlags& flags() const { return flags_; }
  std::string describe() const;

  template <class K>
  const K* as() const {
    return std::get_if<K>(&kind_);
  }

 private:
  Kind kind_;
  CoverageFlags flags_;
};

}  // namespace guess
