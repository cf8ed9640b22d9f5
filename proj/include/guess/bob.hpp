#pragma once

#include "guess/rational.hpp"
#include "guess/rng.hpp"
#include "guess/types.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace guess {

/// How the two numbers of a pair are presented. Only `random` keeps the
/// pair exchangeable; the fixed arrangements exist for the unconstrained
/// game.
enum class Arrangement : std::uint8_t { random, show_lower, show_upper };

struct PairEntry {
  double a;
  double b;
  Rational weight;
  Arrangement arrangement = Arrangement::random;
};

/// Finite mixture of pairs a < b.
class DiscreteBobStrategy {
 public:
  DiscreteBobStrategy(std::vector<PairEntry> entries, std::string description);

  const std::vector<PairEntry>& entries() const { return entries_; }
  const std::string& description() const { return description_; }
  bool exchangeable() const;

  NumberPair sample(RngStream& rng) const;

 private:
  std::vector<PairEntry> entries_;
  std::vector<double> cumulative_;
  std::string description_;
};

struct ContinuousDraw {
  NumberPair pair;
  /// Latent location or scale parameter, NaN when the strategy has none.
  double latent;
};

struct Support {
  double lo;
  double hi;
  /// Interior points where the marginal density has kinks; quadrature
  /// splits there.
  std::vector<double> breaks;
  /// Integrate in log x; for supports spanning many orders of magnitude.
  bool log_scale = false;
};

/// Sampler-defined strategy with optional closed-form structure.
struct ContinuousBobStrategy {
  std::string description;
  std::function<ContinuousDraw(RngStream&)> sampler;
  /// pi(x) = P(Y < x | X = x).
  std::optional<std::function<double(double)>> analytic_pi;
  /// Marginal density of the shown number on `support`.
  std::optional<std::function<double(double)>> marginal_density;
  std::optional<Support> support;
  bool exchangeable = true;

  NumberPair sample(RngStream& rng) const { return sampler(rng).pair; }
  ContinuousDraw sample_with_latent(RngStream& rng) const { return sampler(rng); }
};

using BobStrategy = std::variant<DiscreteBobStrategy, ContinuousBobStrategy>;

NumberPair sample(const BobStrategy& bob, RngStream& rng);
const std::string& description(const BobStrategy& bob);
bool exchangeable(const BobStrategy& bob);

namespace bob {

DiscreteBobStrategy pure_pair(double a, double b);
/// Pairs (beta, beta + 1), beta = 1..m, uniform.
DiscreteBobStrategy consecutive_uniform(std::int64_t m);
/// Pairs (beta, beta + k), beta = 1..m, uniform. The gap k can be large
/// while Bob still holds Alice to 1/2 + k/(2m).
DiscreteBobStrategy scaled_consecutive(std::int64_t m, std::int64_t k);
/// Pairs (3j, 3j + 1) with the given weights on j.
DiscreteBobStrategy modular_three(const std::map<std::int64_t, Rational>& weights);
/// X = 0 shown, hidden +-1. Not exchangeable: unconstrained game only.
DiscreteBobStrategy zero_pm_one();

/// X = B + U1, Y = B + U2 with B uniform on [-m, m].
ContinuousBobStrategy location_uniform(double m);
/// X = A U1, Y = A U2 with log A uniform on [-log m, log m].
ContinuousBobStrategy scale_uniform_twocards(double m);
/// Inverse CDF of the scale: a = m^(2u - 1).
double scale_uniform_inverse_cdf(double m, double u);
ContinuousBobStrategy iid_uniform_pair();
/// Two iid uniforms; the one closer to 1/2 is shown.
ContinuousBobStrategy arrangement_closest_to_half();

}  // namespace bob
}  // namespace guess
