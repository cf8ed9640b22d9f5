#pragma once

#include "guess/bob.hpp"
#include "guess/coverage.hpp"
#include "guess/rational.hpp"
#include "guess/threshold.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace guess::analysis {

/// Payoff of a pure decision set against the fixed pair a < b: 1/2 when
/// both or neither number is in D, 1 when only b is, 0 on an inversion.
Rational payoff_pure(const std::function<bool(double)>& in_decision_set, double a,
                     double b);

/// 1/2 + (F(b) - F(a)) / 2.
Probability win_prob_vs_pair(const CoverageFunction& f, double a, double b);

/// Mixture average of the pair formula; fixed arrangements are scored
/// directly.
Probability win_prob_vs_discrete(const CoverageFunction& f,
                                 const DiscreteBobStrategy& bob);

struct SupportPoint {
  Rational mass;  // P(X = x)
  Rational pi;    // P(Y < x | X = x)
  bool accept;    // pi >= 1/2
};

struct BestResponseReport {
  Rational value;
  /// Support points with their marginal mass, pi and the decision.
  std::map<double, SupportPoint> table;

  std::vector<double> decision_set() const;
};

/// Bayes response: accept iff pi(x) >= 1/2; value 1/2 + sum P(X=x)|pi - 1/2|.
BestResponseReport best_response(const DiscreteBobStrategy& bob);

/// inf { y : P(Y <= y | X = x) >= 1/2 }. Throws UnsupportedPoint when
/// P(X = x) = 0.
double conditional_median(const DiscreteBobStrategy& bob, double x);

/// 1/2 + P(Y < T <= X), summed over the pair support using the interval
/// probabilities of T. Requires an exchangeable strategy.
Probability threshold_win_exact(const ThresholdDistribution& d,
                                const DiscreteBobStrategy& bob);

struct InequalityCertificate {
  Rational lhs;                  // P(X > Y | X >= T)
  Rational p_x_ge_t;             // P(X >= T)
  Rational p_y_lt_t_le_x;        // P(Y < T <= X)
  Rational rhs;                  // 1/2 + P(Y < T | X >= T) / 2
  bool identity_holds = false;   // lhs == rhs exactly
  bool bound_holds = false;      // lhs >= 1/2
  bool strict = false;           // lhs > 1/2
};

/// Exact check of P(X > Y | X >= T) = 1/2 + P(Y < T | X >= T)/2 >= 1/2.
/// Throws ConditioningOnNull when P(X >= T) = 0.
InequalityCertificate conditional_inequality(const DiscreteBobStrategy& bob,
                                             const ThresholdDistribution& d);

enum class Dominance { dominates, dominated, incomparable, equal };
const char* to_string(Dominance d);

/// Compares F1(b) - F1(a) with F2(b) - F2(a) over all grid pairs a < b.
Dominance dominance_check(const CoverageFunction& f1, const CoverageFunction& f2,
                          std::span<const double> grid, double tol = 1e-12);

struct FiniteGameCertificate {
  std::int64_t m = 0;
  Rational value;
  Rational alice_guarantee;  // min over pairs of the uniform-threshold win
  Rational bob_cap;          // max over decision sets vs consecutive pairs
  bool exhaustive = false;
  std::uint64_t decision_sets_checked = 0;
};

enum class FiniteGameMode { exhaustive, automatic };
inline constexpr std::int64_t kMaxExhaustiveM = 20;

/// Game on {1, ..., m + 1}. Throws ExhaustionLimit for m > 20 in exhaustive
/// mode; automatic mode then caps Bob through the best response instead.
/// Throws std::logic_error if the two guarantees fail to meet.
FiniteGameCertificate finite_game_oracle(std::int64_t m,
                                         FiniteGameMode mode = FiniteGameMode::exhaustive,
                                         unsigned workers = 1);

/// Win probability of Alice in the training-sample game: first card as
/// threshold for the second against the third, averaged over all 3!
/// rankings.
Rational training_sample_value();

/// Outcome of one training-sample round. Throws TieError unless the three
/// numbers are distinct.
bool training_sample_correct(double threshold, double shown, double hidden);

/// Exact 1/2 + 1/(2m).
Rational finite_game_value(std::int64_t m);

struct ContinuousBestResponse {
  double value;
  double error;
  std::string method;
  std::optional<std::string> warning;
};

/// 1/2 + E|pi(X) - 1/2|. Quadrature when pi and the marginal density are
/// known; a Monte Carlo average of |pi - 1/2| when only pi is; binned
/// estimation of pi (with a warning) otherwise.
ContinuousBestResponse best_response_value(const ContinuousBobStrategy& bob,
                                           std::uint64_t seed = 1,
                                           std::uint64_t samples = 1'000'000);

/// Exact win probability of F against a continuous strategy with known pi
/// and marginal density: int f(x) [1 - pi(x) + F(x)(2 pi(x) - 1)] dx.
/// Empty when the strategy lacks that structure.
std::optional<double> win_prob_vs_continuous(const CoverageFunction& f,
                                             const ContinuousBobStrategy& bob);

/// Discontinuities of F inside (lo, hi), used as quadrature breakpoints.
/// At most `limit` points are returned.
std::vector<double> jump_points(const CoverageFunction& f, double lo, double hi,
                                std::size_t limit = 4096);

/// P(R > k | X_1 >= T) for n iid uniforms and T uniform on [0, 1], by
/// quadrature of x P(Binomial(n - 1, x) >= k).
double rank_tail_given_exceedance(int n, int k);

}  // namespace guess::analysis
