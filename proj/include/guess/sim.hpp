#pragma once

#include "guess/bob.hpp"
#include "guess/coverage.hpp"
#include "guess/rng.hpp"
#include "guess/threshold.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace guess::sim {

struct Interval {
  double lo;
  double hi;
};

/// Wilson score interval for successes out of trials at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct MonteCarloEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double point = 0.0;
  Interval ci95{0.0, 0.0};
  std::uint64_t seed = 0;

  static MonteCarloEstimate from_counts(std::uint64_t successes, std::uint64_t trials,
                                        std::uint64_t seed);
  /// Binomial standard error of the point estimate.
  double standard_error() const;
  /// sqrt(p (1 - p) / trials) at a reference probability p.
  double sigma_at(double p) const;
  bool within(double exact, double sigmas) const;
};

/// Sum of shard counts. Seeds must agree.
MonteCarloEstimate merge(std::span<const MonteCarloEstimate> shards);

inline constexpr std::uint64_t kShardSize = 1u << 16;

/// Runs `trials` Bernoulli experiments split into fixed-size shards; shard s
/// draws from RngStream(seed, s). The shard layout depends only on the trial
/// count, so results do not depend on the number of workers.
MonteCarloEstimate run_trials(std::uint64_t trials, std::uint64_t seed,
                              const std::function<bool(RngStream&)>& trial,
                              unsigned workers = 1);

/// N rounds of play_round.
MonteCarloEstimate estimate(const BobStrategy& bob, const CoverageFunction& alice,
                            std::uint64_t trials, std::uint64_t seed,
                            unsigned workers = 1);

struct RepeatedGameTrace {
  std::uint64_t rounds = 0;
  std::vector<double> running_frequency;
  std::string schedule;
  std::uint64_t wins = 0;
};

using Schedule = std::function<BobStrategy(std::uint64_t round)>;

/// Round r (0-based) uses the uniform consecutive pairs with m = r + 1.
Schedule default_schedule();
Schedule constant_schedule(BobStrategy bob);

/// Round r plays on RngStream(seed, r).
RepeatedGameTrace repeated_game(const Schedule& schedule, const std::string& schedule_name,
                                const CoverageFunction& alice, std::uint64_t rounds,
                                std::uint64_t seed);

double harmonic(std::uint64_t n);

struct RankRow {
  int k = 0;
  double unconditional = 0.0;   // empirical P(R > k)
  double conditional = 0.0;     // empirical P(R > k | X_1 >= T)
  double exact_unconditional = 0.0;  // (n - k) / n
};

struct RankTable {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t conditioned_trials = 0;
  std::vector<RankRow> rows;  // k = 1..n-1
  std::vector<double> rank_distribution;  // empirical P(R = r), r = 1..n
  std::vector<double> conditional_rank_distribution;
};

/// n iid uniforms and an independent threshold; R is the number of X_j not
/// greater than X_1. Throws DegenerateConditioning if X_1 >= T never occurs.
RankTable rank_experiment(int n, const ThresholdDistribution& threshold,
                          std::uint64_t trials, std::uint64_t seed);

enum class TrainingSource { uniform, exponential, fixed_triple };

/// Three exchangeable distinct values; the first is the threshold for the
/// second against the third.
MonteCarloEstimate training_sample_sim(std::uint64_t trials, std::uint64_t seed,
                                       TrainingSource source = TrainingSource::uniform,
                                       unsigned workers = 1);

}  // namespace guess::sim
