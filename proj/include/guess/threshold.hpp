#pragma once

#include "guess/rational.hpp"
#include "guess/rng.hpp"
#include "guess/types.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace guess {

namespace family {
struct PointMass {
  double t;
};
/// Integers lo, lo + 1, ..., hi with equal mass.
struct DiscreteUniform {
  std::int64_t lo;
  std::int64_t hi;
};
struct ContinuousUniform {
  double lo;
  double hi;
};
struct Logistic {
  double location;
  double scale;
};
struct Normal {
  double mean;
  double sd;
};
}  // namespace family

using ThresholdFamily =
    std::variant<family::PointMass, family::DiscreteUniform,
                 family::ContinuousUniform, family::Logistic, family::Normal>;

/// Law of a random threshold T. Mass p_minus sits at -inf (always accept)
/// and p_plus at +inf (always reject); the remaining mass follows `family`.
class ThresholdDistribution {
 public:
  explicit ThresholdDistribution(ThresholdFamily family,
                                 Probability p_minus = Probability{0.0},
                                 Probability p_plus = Probability{0.0});

  const ThresholdFamily& family() const { return family_; }
  Probability p_minus() const { return p_minus_; }
  Probability p_plus() const { return p_plus_; }
  double finite_mass() const { return 1.0 - p_minus_ - p_plus_; }

  /// CDF of the finite part alone.
  double family_cdf(double x) const;
  /// P(T <= x), counting the atom at -inf.
  double cdf(double x) const;
  /// P(T <= x) as an exact rational. Discrete families are exact; the
  /// continuous ones convert the double CDF value exactly.
  Rational cdf_exact(double x) const;
  /// P(a < T <= b), computed per family rather than as a CDF difference
  /// where the family allows it (counting for the discrete uniform).
  double interval_prob(double a, double b) const;

  /// May return -inf or +inf when the infinity atoms are nonzero.
  double sample(RngStream& rng) const;

  /// Strictly increasing CDF on the whole line.
  bool fully_supported() const;
  bool proper() const { return p_minus_ == 0.0 && p_plus_ == 0.0; }
  bool discrete() const;

  std::string describe() const;

 private:
  ThresholdFamily family_;
  Probability p_minus_;
  Probability p_plus_;
};

}  // namespace guess
