#include "guess/sim.hpp"

#include "guess/game.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <thread>

namespace guess::sim {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

MonteCarloEstimate MonteCarloEstimate::from_counts(std::uint64_t successes, std::uint64_t trials,
                                                   std::uint64_t seed) {
  MonteCarloEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.point = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  e.ci95 = wilson_interval(successes, trials);
  e.seed = seed;
  return e;
}

double MonteCarloEstimate::standard_error() const { return sigma_at(point); }

double MonteCarloEstimate::sigma_at(double p) const {
  return trials ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 1.0;
}

bool MonteCarloEstimate::within(double exact, double sigmas) const {
  return std::abs(point - exact) <= sigmas * sigma_at(exact);
}

MonteCarloEstimate merge(std::span<const MonteCarloEstimate> shards) {
  if (shards.empty()) return {};
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  for (const auto& e : shards) {
    if (e.seed != shards.front().seed) throw std::invalid_argument("merging estimates with different seeds");
    s += e.successes;
    t += e.trials;
  }
  return MonteCarloEstimate::from_counts(s, t, shards.front().seed);
}

MonteCarloEstimate run_trials(std::uint64_t trials, std::uint64_t seed,
                              const std::function<bool(RngStream&)>& trial, unsigned workers) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const std::uint64_t shards = (trials + kShardSize - 1) / kShardSize;
  std::vector<std::uint64_t> wins(shards, 0);
  auto run_shard = [&](std::uint64_t s) {
    RngStream rng(seed, s);
    const std::uint64_t begin = s * kShardSize;
    const std::uint64_t end = std::min(trials, begin + kShardSize);
    std::uint64_t w = 0;
    for (std::uint64_t i = begin; i < end; ++i) w += trial(rng) ? 1 : 0;
    wins[s] = w;
  };
  if (workers <= 1 || shards == 1) {
    for (std::uint64_t s = 0; s < shards; ++s) run_shard(s);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t s = next++; s < shards; s = next++) run_shard(s);
      });
    }
  }
  std::uint64_t total = 0;
  for (auto w : wins) total += w;
  return MonteCarloEstimate::from_counts(total, trials, seed);
}

MonteCarloEstimate estimate(const BobStrategy& bob, const CoverageFunction& alice,
                            std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  return run_trials(
      trials, seed, [&](RngStream& rng) { return play_round(bob, alice, rng).correct; }, workers);
}

Schedule default_schedule() {
  // Same law as bob::consecutive_uniform(round + 1) without building the
  // O(m) table every round.
  return [](std::uint64_t round) -> BobStrategy {
    const auto m = static_cast<std::int64_t>(round) + 1;
    ContinuousBobStrategy s;
    s.description = "consecutive uniform m=" + std::to_string(m);
    s.sampler = [m](RngStream& rng) {
      const auto beta = static_cast<double>(rng.integer(1, m));
      const bool lower_shown = rng.bernoulli(0.5);
      return ContinuousDraw{lower_shown ? NumberPair{beta, beta + 1.0} : NumberPair{beta + 1.0, beta}, beta};
    };
    return s;
  };
}

Schedule constant_schedule(BobStrategy bob) {
  return [bob = std::move(bob)](std::uint64_t) { return bob; };
}

RepeatedGameTrace repeated_game(const Schedule& schedule, const std::string& schedule_name,
                                const CoverageFunction& alice, std::uint64_t rounds,
                                std::uint64_t seed) {
  if (rounds == 0) throw std::invalid_argument("need at least one round");
  RepeatedGameTrace trace;
  trace.rounds = rounds;
  trace.schedule = schedule_name;
  trace.running_frequency.reserve(rounds);
  for (std::uint64_t r = 0; r < rounds; ++r) {
    RngStream rng(seed, r);
    if (play_round(schedule(r), alice, rng).correct) ++trace.wins;
    trace.running_frequency.push_back(static_cast<double>(trace.wins) / static_cast<double>(r + 1));
  }
  return trace;
}

double harmonic(std::uint64_t n) {
  double h = 0.0;
  for (std::uint64_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

RankTable rank_experiment(int n, const ThresholdDistribution& threshold, std::uint64_t trials,
                          std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("rank experiment needs n >= 2");
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> rank_count(nn + 1, 0);
  std::vector<std::uint64_t> cond_count(nn + 1, 0);
  std::uint64_t conditioned = 0;
  std::vector<double> xs(nn);
  const std::uint64_t shards = (trials + kShardSize - 1) / kShardSize;
  for (std::uint64_t s = 0; s < shards; ++s) {
    RngStream rng(seed, s);
    const std::uint64_t end = std::min(trials, (s + 1) * kShardSize);
    for (std::uint64_t i = s * kShardSize; i < end; ++i) {
      for (auto& x : xs) x = rng.uniform_open();
      const double t = threshold.sample(rng);
      std::size_t rank = 0;
      for (double x : xs) rank += x <= xs[0] ? 1 : 0;
      ++rank_count[rank];
      if (xs[0] >= t) {
        ++conditioned;
        ++cond_count[rank];
      }
    }
  }
  if (conditioned == 0) throw DegenerateConditioning("no trial had X_1 >= T");

  RankTable table;
  table.n = n;
  table.trials = trials;
  table.conditioned_trials = conditioned;
  const double total = static_cast<double>(trials);
  const double cond_total = static_cast<double>(conditioned);
  for (std::size_t r = 1; r <= nn; ++r) {
    table.rank_distribution.push_back(static_cast<double>(rank_count[r]) / total);
    table.conditional_rank_distribution.push_back(static_cast<double>(cond_count[r]) / cond_total);
  }
  for (int k = 1; k < n; ++k) {
    RankRow row;
    row.k = k;
    std::uint64_t above = 0;
    std::uint64_t cond_above = 0;
    for (std::size_t r = static_cast<std::size_t>(k) + 1; r <= nn; ++r) {
      above += rank_count[r];
      cond_above += cond_count[r];
    }
    row.unconditional = static_cast<double>(above) / total;
    row.conditional = static_cast<double>(cond_above) / cond_total;
    row.exact_unconditional = static_cast<double>(n - k) / n;
    table.rows.push_back(row);
  }
  return table;
}

MonteCarloEstimate training_sample_sim(std::uint64_t trials, std::uint64_t seed,
                                       TrainingSource source, unsigned workers) {
  return run_trials(
      trials, seed,
      [source](RngStream& rng) {
        std::array<double, 3> v{};
        switch (source) {
          case TrainingSource::uniform:
            for (auto& x : v) x = rng.uniform_open();
            break;
          case TrainingSource::exponential:
            for (auto& x : v) x = rng.exponential(1.0);
            break;
          case TrainingSource::fixed_triple:
            v = {-3.5, 0.25, 17.0};
            break;
        }
        std::shuffle(v.begin(), v.end(), rng);
        const double t = v[0];
        const double x = v[1];
        const double y = v[2];
        if (t == x || t == y || x == y) throw TieError("training sample drew a tie");
        return (x >= t) == (x > y);
      },
      workers);
}

}  // namespace guess::sim
