#include <doctest.h>

#include "guess/alice.hpp"
#include "guess/analysis.hpp"
#include "guess/sim.hpp"

#include <cmath>

using namespace guess;

namespace {
const ThresholdDistribution kLogistic{family::Logistic{0.0, 1.0}};
}

TEST_CASE("payoff of a pure decision set") {
  const auto upper = [](double x) { return x >= 1.5; };
  CHECK(analysis::payoff_pure(upper, 1.0, 2.0) == 1);
  CHECK(analysis::payoff_pure(upper, 2.0, 3.0) == make_rational(1, 2));
  CHECK(analysis::payoff_pure([](double x) { return x < 1.5; }, 1.0, 2.0) == 0);
  CHECK_THROWS_AS(analysis::payoff_pure(upper, 2.0, 1.0), InvalidPair);
}

TEST_CASE("best response against consecutive pairs") {
  for (std::int64_t m = 1; m <= 8; ++m) {
    const auto br = analysis::best_response(bob::consecutive_uniform(m));
    CHECK(br.value == analysis::finite_game_value(m));
  }
  CHECK(analysis::best_response(bob::consecutive_uniform(3)).value == make_rational(2, 3));
  const auto d = analysis::best_response(bob::consecutive_uniform(3)).decision_set();
  CHECK(d == std::vector<double>{2.0, 3.0, 4.0});
}

TEST_CASE("conditional median") {
  const auto b = bob::consecutive_uniform(3);
  CHECK(analysis::conditional_median(b, 2.0) == 1.0);
  CHECK(analysis::conditional_median(b, 1.0) == 2.0);
  CHECK_THROWS_AS(analysis::conditional_median(b, 10.0), UnsupportedPoint);
}

TEST_CASE("threshold win probability") {
  for (std::int64_t m : {1, 3, 4, 9}) {
    const ThresholdDistribution t{family::DiscreteUniform{2, m + 1}};
    const double w = analysis::threshold_win_exact(t, bob::consecutive_uniform(m));
    CHECK(w == doctest::Approx(0.5 + 0.5 / m).epsilon(1e-15));
    CHECK(analysis::win_prob_vs_discrete(alice::random_threshold(t), bob::consecutive_uniform(m)) ==
          doctest::Approx(0.5 + 0.5 / m).epsilon(1e-14));
  }
  CHECK(analysis::win_prob_vs_discrete(alice::threshold(1.5), bob::consecutive_uniform(3)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("conditional inequality certificate") {
  const auto c = analysis::conditional_inequality(bob::consecutive_uniform(3),
                                                  ThresholdDistribution{family::DiscreteUniform{2, 4}});
  CHECK(c.lhs == make_rational(2, 3));
  CHECK(c.p_x_ge_t == make_rational(1, 2));
  CHECK(c.p_y_lt_t_le_x == make_rational(1, 6));
  CHECK(c.identity_holds);
  CHECK(c.strict);

  const auto flat = analysis::conditional_inequality(bob::pure_pair(1.0, 2.0), ThresholdDistribution{family::PointMass{-5.0}});
  CHECK(flat.lhs == make_rational(1, 2));
  CHECK(flat.bound_holds);
  CHECK_FALSE(flat.strict);

  CHECK_THROWS_AS(analysis::conditional_inequality(bob::consecutive_uniform(3),
                                                   ThresholdDistribution{family::PointMass{100.0}}),
                  ConditioningOnNull);
}

TEST_CASE("dominance") {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(-5.0 + 10.0 * i / 99.0);
  const auto f = alice::random_threshold(kLogistic);
  const auto g = alice::gamma_mixture(f, Probability{0.75});
  CHECK(analysis::dominance_check(f, g, grid) == analysis::Dominance::dominates);
  CHECK(analysis::dominance_check(g, f, grid) == analysis::Dominance::dominated);
  CHECK(analysis::dominance_check(f, f, grid) == analysis::Dominance::equal);
  CHECK(analysis::dominance_check(alice::threshold(0.0), f, grid) == analysis::Dominance::incomparable);
  CHECK(std::string(analysis::to_string(analysis::Dominance::dominates)) == "dominates");
}

TEST_CASE("finite game certificate") {
  const auto c = analysis::finite_game_oracle(4);
  CHECK(c.value == make_rational(5, 8));
  CHECK(c.alice_guarantee == make_rational(5, 8));
  CHECK(c.bob_cap == make_rational(5, 8));
  CHECK(c.exhaustive);
  CHECK(c.decision_sets_checked == 32);

  const auto one = analysis::finite_game_oracle(1);
  CHECK(one.value == 1);

  const auto serial = analysis::finite_game_oracle(12, analysis::FiniteGameMode::exhaustive, 1);
  const auto parallel = analysis::finite_game_oracle(12, analysis::FiniteGameMode::exhaustive, 4);
  CHECK(serial.bob_cap == parallel.bob_cap);
  CHECK(serial.decision_sets_checked == parallel.decision_sets_checked);

  CHECK_THROWS_AS(analysis::finite_game_oracle(21), ExhaustionLimit);
  const auto big = analysis::finite_game_oracle(40, analysis::FiniteGameMode::automatic);
  CHECK_FALSE(big.exhaustive);
  CHECK(big.value == make_rational(41, 80));
  CHECK_THROWS(analysis::finite_game_oracle(0));
}

TEST_CASE("training sample") {
  CHECK(analysis::training_sample_value() == make_rational(2, 3));
  CHECK(analysis::training_sample_correct(0.0, 1.0, 0.5));
  CHECK_FALSE(analysis::training_sample_correct(0.0, 0.5, 1.0));
  CHECK(analysis::training_sample_correct(2.0, 0.5, 1.0));
  CHECK_THROWS_AS(analysis::training_sample_correct(1.0, 1.0, 2.0), TieError);
}

TEST_CASE("continuous best response values") {
  const auto iid = analysis::best_response_value(bob::iid_uniform_pair());
  CHECK(iid.method == "quadrature");
  CHECK(iid.value == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(analysis::best_response_value(bob::location_uniform(2.0)).value ==
        doctest::Approx(0.541666666666666667).epsilon(1e-9));
  CHECK(analysis::best_response_value(bob::location_uniform(10.0)).value ==
        doctest::Approx(0.508333333333333333).epsilon(1e-9));
  CHECK(analysis::best_response_value(bob::location_uniform(50.0)).value < 0.51);
  CHECK(analysis::best_response_value(bob::arrangement_closest_to_half()).value == doctest::Approx(0.5));
  CHECK(analysis::best_response_value(bob::scale_uniform_twocards(std::exp(10.0))).value ==
        doctest::Approx(0.524999999896942).epsilon(1e-8));
  CHECK(analysis::best_response_value(bob::scale_uniform_twocards(std::exp(2.0))).value ==
        doctest::Approx(0.620503447509478).epsilon(1e-8));
}

TEST_CASE("best response fallbacks") {
  auto pi_only = bob::iid_uniform_pair();
  pi_only.marginal_density.reset();
  const auto mc = analysis::best_response_value(pi_only, 3, 400000);
  CHECK(mc.method == "monte-carlo");
  CHECK(std::abs(mc.value - 0.75) < 4.0 * mc.error);
  CHECK_FALSE(mc.warning.has_value());

  auto bare = bob::iid_uniform_pair();
  bare.analytic_pi.reset();
  bare.marginal_density.reset();
  const auto binned = analysis::best_response_value(bare, 3, 400000);
  CHECK(binned.method == "binned");
  CHECK(binned.warning.has_value());
  CHECK(std::abs(binned.value - 0.75) < 0.01);
}

TEST_CASE("exact continuous win probabilities") {
  CHECK(*analysis::win_prob_vs_continuous(alice::threshold(0.5), bob::iid_uniform_pair()) ==
        doctest::Approx(0.75).epsilon(1e-10));
  CHECK(*analysis::win_prob_vs_continuous(alice::threshold(0.0), bob::location_uniform(10.0)) ==
        doctest::Approx(0.5 + 1.0 / 120.0).epsilon(1e-10));
  const auto f = alice::random_threshold(kLogistic);
  CHECK(*analysis::win_prob_vs_continuous(f, bob::iid_uniform_pair()) == doctest::Approx(0.538770794036846).epsilon(1e-9));
  CHECK(*analysis::win_prob_vs_continuous(f, bob::location_uniform(2.0)) == doctest::Approx(0.530744834045392).epsilon(1e-9));
  CHECK(*analysis::win_prob_vs_continuous(f, bob::scale_uniform_twocards(100.0)) ==
        doctest::Approx(0.526354521056713).epsilon(1e-9));
  CHECK(*analysis::win_prob_vs_continuous(alice::blind(Probability{0.3}), bob::location_uniform(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));

  auto no_density = bob::iid_uniform_pair();
  no_density.marginal_density.reset();
  CHECK_FALSE(analysis::win_prob_vs_continuous(f, no_density).has_value());
}

TEST_CASE("exact values sit inside Monte Carlo intervals") {
  const auto f = alice::random_threshold(ThresholdDistribution{family::Normal{0.5, 1.0}});
  const std::vector<ContinuousBobStrategy> bobs{bob::iid_uniform_pair(), bob::location_uniform(2.0),
                                                bob::scale_uniform_twocards(30.0)};
  std::uint64_t seed = 50;
  for (const auto& b : bobs) {
    const double exact = *analysis::win_prob_vs_continuous(f, b);
    const auto mc = sim::estimate(b, f, 1'000'000, seed++);
    CHECK(mc.within(exact, 3.0));
  }
  const auto d = bob::consecutive_uniform(6);
  const double exact = analysis::win_prob_vs_discrete(f, d);
  CHECK(sim::estimate(d, f, 1'000'000, seed).within(exact, 3.0));
}

TEST_CASE("best response beats every tested strategy") {
  RngStream rng(77, 0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<PairEntry> entries;
    const int n = static_cast<int>(rng.integer(1, 4));
    for (int i = 0; i < n; ++i) {
      const auto a = static_cast<double>(rng.integer(-5, 5));
      entries.push_back({a, a + static_cast<double>(rng.integer(1, 3)), make_rational(1, n)});
    }
    const DiscreteBobStrategy b{entries, "random"};
    const double v = to_double(analysis::best_response(b).value);
    for (double t = -6.5; t <= 8.5; t += 0.5) {
      CHECK(analysis::win_prob_vs_discrete(alice::threshold(t), b) <= v + 1e-15);
    }
    CHECK(analysis::win_prob_vs_discrete(alice::random_threshold(kLogistic), b) <= v + 1e-15);
  }
}

TEST_CASE("jump points") {
  CHECK(analysis::jump_points(alice::threshold(1.5), 0.0, 3.0) == std::vector<double>{1.5});
  const auto du = alice::random_threshold(ThresholdDistribution{family::DiscreteUniform{2, 5}});
  CHECK(analysis::jump_points(du, 0.0, 10.0) == std::vector<double>{2.0, 3.0, 4.0, 5.0});
  CHECK(analysis::jump_points(alice::random_threshold(kLogistic), -5.0, 5.0).empty());
}

TEST_CASE("rank tail given exceedance") {
  CHECK(analysis::rank_tail_given_exceedance(3, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(analysis::rank_tail_given_exceedance(4, 2) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(analysis::rank_tail_given_exceedance(5, 1) == doctest::Approx(14.0 / 15.0).epsilon(1e-12));
  CHECK_THROWS(analysis::rank_tail_given_exceedance(3, 3));
}
