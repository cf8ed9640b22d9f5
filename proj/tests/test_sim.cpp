#include <doctest.h>

#include "guess/alice.hpp"
#include "guess/game.hpp"
#include "guess/sim.hpp"

#include <cmath>
#include <numeric>

using namespace guess;

TEST_CASE("wilson interval") {
  const auto w = sim::wilson_interval(7, 10);
  CHECK(w.lo == doctest::Approx(0.396778147461145).epsilon(1e-12));
  CHECK(w.hi == doctest::Approx(0.892208732593699).epsilon(1e-12));
  const auto zero = sim::wilson_interval(0, 10);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi > 0.0);
  const auto all = sim::wilson_interval(10, 10);
  CHECK(all.hi == 1.0);
  CHECK(all.lo < 1.0);
}

TEST_CASE("estimates are deterministic and independent of the worker count") {
  const auto bob = bob::consecutive_uniform(5);
  const auto f = alice::random_threshold(ThresholdDistribution{family::Logistic{3.0, 1.0}});
  const auto a = sim::estimate(bob, f, 300'000, 17, 1);
  const auto b = sim::estimate(bob, f, 300'000, 17, 1);
  const auto c = sim::estimate(bob, f, 300'000, 17, 4);
  CHECK(a.successes == b.successes);
  CHECK(a.successes == c.successes);
  CHECK(a.point == c.point);
  CHECK(a.seed == 17);
  const auto d = sim::estimate(bob, f, 300'000, 18, 1);
  CHECK(a.successes != d.successes);
}

TEST_CASE("merging shard estimates") {
  const std::vector<sim::MonteCarloEstimate> shards{sim::MonteCarloEstimate::from_counts(30, 100, 5),
                                                    sim::MonteCarloEstimate::from_counts(70, 100, 5)};
  const auto m = sim::merge(shards);
  CHECK(m.successes == 100);
  CHECK(m.trials == 200);
  CHECK(m.point == 0.5);
  const std::vector<sim::MonteCarloEstimate> mixed{sim::MonteCarloEstimate::from_counts(1, 2, 1),
                                                   sim::MonteCarloEstimate::from_counts(1, 2, 2)};
  CHECK_THROWS(sim::merge(mixed));
}

TEST_CASE("a single trial gives zero or one") {
  const auto e = sim::estimate(bob::pure_pair(1.0, 2.0), alice::blind(Probability{0.5}), 1, 3);
  CHECK((e.point == 0.0 || e.point == 1.0));
  CHECK_THROWS(sim::estimate(bob::pure_pair(1.0, 2.0), alice::blind(Probability{0.5}), 0, 3));
}

TEST_CASE("decide accepts with probability F") {
  const auto f = alice::blind(Probability{0.3});
  const auto e = sim::run_trials(1'000'000, 4, [&](RngStream& rng) { return decide(f, 1.0, rng); });
  CHECK(std::abs(e.point - 0.3) <= 3.0 * std::sqrt(0.21 / 1e6));
}

TEST_CASE("threshold above both numbers wins half the time") {
  const auto e = sim::estimate(bob::pure_pair(7.0, 8.0), alice::threshold(5.0), 1'000'000, 6);
  CHECK(e.within(0.5, 3.0));
}

TEST_CASE("repeated game") {
  const auto trace = sim::repeated_game(sim::default_schedule(), "consecutive", alice::threshold(2.0), 1000, 8);
  CHECK(trace.rounds == 1000);
  CHECK(trace.running_frequency.size() == 1000);
  CHECK(trace.running_frequency.back() == doctest::Approx(trace.wins / 1000.0));
  const auto again = sim::repeated_game(sim::default_schedule(), "consecutive", alice::threshold(2.0), 1000, 8);
  CHECK(again.running_frequency == trace.running_frequency);
  CHECK(sim::harmonic(1) == 1.0);
  CHECK(sim::harmonic(4) == doctest::Approx(25.0 / 12.0));

  const auto fixed = sim::repeated_game(sim::constant_schedule(bob::pure_pair(1.0, 2.0)), "pure",
                                        alice::threshold(1.5), 50, 9);
  CHECK(fixed.wins == 50);
}

TEST_CASE("default schedule draws the consecutive pairs") {
  const auto schedule = sim::default_schedule();
  RngStream rng(10, 0);
  std::vector<int> lower(5, 0);
  for (int i = 0; i < 50000; ++i) {
    const auto p = sample(schedule(4), rng);
    CHECK(std::abs(p.shown - p.hidden) == 1.0);
    const auto lo = static_cast<int>(std::min(p.shown, p.hidden));
    REQUIRE(lo >= 1);
    REQUIRE(lo <= 5);
    ++lower[static_cast<std::size_t>(lo - 1)];
  }
  for (int c : lower) CHECK(std::abs(c - 10000) < 4.0 * std::sqrt(50000 * 0.2 * 0.8));
}

TEST_CASE("rank experiment") {
  const ThresholdDistribution t{family::ContinuousUniform{0.0, 1.0}};
  const auto table = sim::rank_experiment(4, t, 200'000, 12);
  CHECK(table.rows.size() == 3);
  CHECK(std::accumulate(table.rank_distribution.begin(), table.rank_distribution.end(), 0.0) == doctest::Approx(1.0));
  for (double p : table.rank_distribution) CHECK(std::abs(p - 0.25) < 0.005);
  for (const auto& row : table.rows) {
    CHECK(row.conditional > row.unconditional);
    CHECK(row.exact_unconditional == doctest::Approx((4.0 - row.k) / 4.0));
  }
  CHECK_THROWS_AS(sim::rank_experiment(3, ThresholdDistribution{family::PointMass{2.0}}, 1000, 1), DegenerateConditioning);
}

TEST_CASE("training sample simulation") {
  for (auto source : {sim::TrainingSource::uniform, sim::TrainingSource::exponential, sim::TrainingSource::fixed_triple}) {
    const auto e = sim::training_sample_sim(1'000'000, 14, source);
    CHECK(e.within(2.0 / 3.0, 3.0));
  }
  const auto one = sim::training_sample_sim(1, 15);
  CHECK((one.point == 0.0 || one.point == 1.0));
}
