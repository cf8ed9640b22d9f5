#include <doctest.h>

#include "guess/alice.hpp"
#include "guess/analysis.hpp"

#include <cmath>
#include <vector>

using namespace guess;

namespace {

const ThresholdDistribution kLogistic{family::Logistic{0.0, 1.0}};

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
  return g;
}

std::vector<CoverageFunction> sample_strategies() {
  const auto f = alice::random_threshold(kLogistic);
  return {alice::blind(Probability{0.3}),
          alice::threshold(0.5),
          f,
          alice::random_threshold(ThresholdDistribution{family::Normal{1.0, 2.0}, Probability{0.1}, Probability{0.2}}),
          alice::random_threshold(ThresholdDistribution{family::DiscreteUniform{2, 6}}),
          alice::dual(f),
          alice::gamma_mixture(f, Probability{0.75}),
          alice::poisson_coverage(PoissonIntensity::exponential()),
          alice::lattice(alice::q_deformed_lattice(0.5, -10, 10)),
          alice::piecewise_linear({{-1.0, 0.1}, {0.0, 0.9}, {2.0, 0.4}})};
}

}  // namespace

TEST_CASE("blind guessing is constant") {
  const auto one = alice::blind(Probability{1.0});
  const auto zero = alice::blind(Probability{0.0});
  for (double x : {-1e9, 0.0, 3.0}) {
    CHECK(one(x) == 1.0);
    CHECK(zero(x) == 0.0);
  }
  const auto half = alice::blind(Probability{0.5});
  CHECK(analysis::win_prob_vs_pair(half, 7.0, 8.0) == 0.5);
  const auto c = alice::classify(half, grid(-5, 5, 11));
  CHECK(c.minimax == Tri::yes);
  CHECK(c.strongly_dominant == Tri::no);
  CHECK(c.proper == Tri::no);
}

TEST_CASE("random threshold coverage is the CDF of T") {
  const auto f = alice::random_threshold(kLogistic);
  CHECK(f(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f(1.0) == doctest::Approx(0.731058578630004879).epsilon(1e-14));

  const auto pm = alice::random_threshold(ThresholdDistribution{family::PointMass{2.5}});
  REQUIRE(pm.as<kind::StepThreshold>() != nullptr);
  CHECK(pm.as<kind::StepThreshold>()->t == 2.5);

  const std::int64_t m = 4;
  const auto du = alice::random_threshold(ThresholdDistribution{family::DiscreteUniform{2, m + 1}});
  for (double x : {-3.0, 1.0, 1.99, 2.0, 2.5, 3.0, 4.7, 5.0, 9.0}) {
    const double expected = std::clamp((std::floor(x) - 1.0) / m, 0.0, 1.0);
    CHECK(du(x) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("infinite threshold atoms squeeze the coverage") {
  const auto f = alice::random_threshold(ThresholdDistribution{family::Logistic{0.0, 1.0}, Probability{0.1}, Probability{0.3}});
  CHECK(f(-1e6) == doctest::Approx(0.1));
  CHECK(f(1e6) == doctest::Approx(0.7));
  CHECK(f(0.0) == doctest::Approx(0.1 + 0.6 * 0.5));
  CHECK(f.flags().proper == Tri::no);
}

TEST_CASE("dual strategy") {
  CHECK(alice::dual(alice::blind(Probability{0.2}))(0.0) == doctest::Approx(0.8));
  const auto d = alice::dual(alice::threshold(3.0));
  CHECK(d(3.0) == 0.0);
  CHECK(d(2.9) == 1.0);
  const auto f = alice::random_threshold(kLogistic);
  CHECK(analysis::win_prob_vs_pair(alice::dual(f), 0.0, 1.0) ==
        doctest::Approx(1.0 - analysis::win_prob_vs_pair(f, 0.0, 1.0)).epsilon(1e-15));
}

TEST_CASE("gamma mixture of a threshold and its dual") {
  const auto f = alice::random_threshold(kLogistic);
  CHECK(alice::gamma_mixture(f, Probability{0.5}).as<kind::Constant>() != nullptr);
  CHECK(alice::gamma_mixture(f, Probability{0.5})(3.0) == 0.5);
  const auto g = alice::gamma_mixture(f, Probability{0.75});
  CHECK(analysis::win_prob_vs_pair(g, 0.0, 1.0) == doctest::Approx(0.557764644657501219).epsilon(1e-14));
  CHECK(g(-1e3) == doctest::Approx(0.25));
  CHECK(g(1e3) == doctest::Approx(0.75));

  const auto c = alice::classify(g, grid(-10, 10, 101));
  CHECK(c.strongly_dominant == Tri::yes);
  CHECK(c.proper == Tri::no);
  CHECK(c.superminimax == Tri::no);

  const auto r = alice::gamma_mixture(f, Probability{1.0});
  CHECK(r(0.3) == f(0.3));
}

TEST_CASE("poisson coverage") {
  const auto h = alice::poisson_coverage(PoissonIntensity::homogeneous(std::log(2.0)));
  REQUIRE(h.as<kind::Constant>() != nullptr);
  CHECK(h(0.0) == doctest::Approx(0.5).epsilon(1e-15));

  const auto e = alice::poisson_coverage(PoissonIntensity::exponential());
  CHECK(e(0.0) == doctest::Approx(0.468536394613384327).epsilon(1e-14));
  CHECK(e(-40.0) < 1e-15);
  CHECK(e(40.0) == 1.0);
  const auto c = alice::classify(e, grid(-5, 5, 50));
  CHECK(c.superminimax == Tri::yes);
  CHECK_THROWS(alice::poisson_coverage(PoissonIntensity::homogeneous(0.0)));
}

TEST_CASE("poisson coverage agrees with the matching threshold CDF") {
  const auto e = alice::poisson_coverage(PoissonIntensity::exponential());
  const double lambda0 = 1.0 - std::exp(-1.0);
  for (double a : {-3.0, -0.5, 0.0, 0.7, 2.0}) {
    for (double b : {a + 0.1, a + 1.0, a + 2.5}) {
      const double fa = 1.0 - std::exp(-lambda0 * std::exp(a));
      const double fb = 1.0 - std::exp(-lambda0 * std::exp(b));
      CHECK(analysis::win_prob_vs_pair(e, a, b) == doctest::Approx(0.5 + (fb - fa) / 2).epsilon(1e-13));
    }
  }
}

TEST_CASE("sampled poisson decision sets cover with the right frequency") {
  const int n = 100000;
  RngStream rng(11, 0);
  int hom = 0;
  int expo = 0;
  const double rate = 0.7;
  for (int i = 0; i < n; ++i) {
    const auto s = alice::sample_poisson_decision_set(PoissonIntensity::homogeneous(rate), -2.0, 2.0, rng);
    for (std::size_t j = 1; j < s.size(); ++j) CHECK(s[j - 1].hi < s[j].lo);
    hom += alice::covers(s, 0.3) ? 1 : 0;
    expo += alice::covers(alice::sample_poisson_decision_set(PoissonIntensity::exponential(), -1.0, 1.0, rng), 0.0);
  }
  const double p1 = 1.0 - std::exp(-rate);
  const double p2 = 0.468536394613384327;
  CHECK(std::abs(hom / double(n) - p1) < 3.0 * std::sqrt(p1 * (1 - p1) / n));
  CHECK(std::abs(expo / double(n) - p2) < 3.0 * std::sqrt(p2 * (1 - p2) / n));
}

TEST_CASE("lattice Bernoulli sets") {
  const LatticeRandomSet full(0, std::vector<double>(5, 1.0));
  RngStream rng(3, 0);
  CHECK(alice::lattice_bernoulli(full, rng) == std::set<std::int64_t>{0, 1, 2, 3, 4});

  const auto q = alice::q_deformed_lattice(0.5, -10, 10);
  std::vector<int> hits(21, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    for (auto j : alice::lattice_bernoulli(q, rng)) ++hits[static_cast<std::size_t>(j + 10)];
  }
  for (int j = -10; j <= 10; ++j) {
    const double p = 1.0 / (1.0 + std::pow(0.5, j));
    CHECK(std::abs(hits[static_cast<std::size_t>(j + 10)] / double(n) - p) <= 3.0 * std::sqrt(p * (1 - p) / n) + 1e-12);
  }
  const auto f = alice::lattice(q);
  CHECK(f(2.7) == doctest::Approx(1.0 / (1.0 + 0.25)));
  CHECK(f(100.0) == doctest::Approx(1.0 / (1.0 + std::pow(0.5, 10))));

  const auto c = alice::lattice(LatticeRandomSet(0, {0.3, 0.3}));
  CHECK(analysis::win_prob_vs_pair(c, 0.0, 1.0) == 0.5);
}

TEST_CASE("classification of the basic strategies") {
  const auto g = grid(-10, 10, 101);
  const auto step = alice::classify(alice::threshold(1.0), g);
  CHECK(step.minimax == Tri::yes);
  CHECK(step.strongly_dominant == Tri::no);
  CHECK(step.proper == Tri::yes);
  CHECK(step.superminimax == Tri::no);

  const auto lg = alice::classify(alice::random_threshold(kLogistic), g);
  CHECK(lg.superminimax == Tri::yes);
  CHECK_FALSE(lg.unknown_classification);

  const auto pl = alice::classify(alice::piecewise_linear({{-1.0, 0.1}, {0.0, 0.9}, {2.0, 0.4}}), g);
  CHECK(pl.minimax == Tri::no);
  CHECK(pl.superminimax == Tri::no);

  const auto inc = alice::classify(alice::piecewise_linear({{-1.0, 0.0}, {1.0, 1.0}}), g);
  CHECK(inc.minimax == Tri::unknown);
  CHECK(inc.unknown_classification);

  const std::vector<double> unsorted{1.0, 0.0};
  CHECK_THROWS_AS(alice::classify(alice::threshold(0.0), unsorted), std::invalid_argument);
  const std::vector<double> single{1.0};
  CHECK_THROWS_AS(alice::classify(alice::threshold(0.0), single), std::invalid_argument);
}

TEST_CASE("piecewise linear validation and interpolation") {
  CHECK_THROWS(alice::piecewise_linear({}));
  CHECK_THROWS(alice::piecewise_linear({{0.0, 0.5}, {0.0, 0.6}}));
  CHECK_THROWS(alice::piecewise_linear({{0.0, 1.5}}));
  const auto f = alice::piecewise_linear({{0.0, 0.2}, {2.0, 0.6}});
  CHECK(f(1.0) == doctest::Approx(0.4));
  CHECK(f(-5.0) == doctest::Approx(0.2));
  CHECK(f(5.0) == doctest::Approx(0.6));
}

TEST_CASE("duality: a strategy and its dual win with total probability one") {
  RngStream rng(99, 0);
  for (const auto& f : sample_strategies()) {
    const auto d = alice::dual(f);
    for (int i = 0; i < 50; ++i) {
      const double a = rng.uniform(-6.0, 6.0);
      const double b = a + rng.uniform(0.01, 4.0);
      CHECK(analysis::win_prob_vs_pair(f, a, b) + analysis::win_prob_vs_pair(d, a, b) ==
            doctest::Approx(1.0).epsilon(1e-15));
    }
  }
}

TEST_CASE("mixture identity") {
  RngStream rng(100, 0);
  for (const auto& f : sample_strategies()) {
    for (double gamma : {0.0, 0.1, 0.75, 1.0}) {
      const auto g = alice::gamma_mixture(f, Probability{gamma});
      for (int i = 0; i < 20; ++i) {
        const double a = rng.uniform(-6.0, 6.0);
        const double b = a + rng.uniform(0.01, 4.0);
        const double expected = 0.5 + (2 * gamma - 1) * (f(b) - f(a)) / 2;
        CHECK(std::abs(analysis::win_prob_vs_pair(g, a, b) - expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("certified flags agree with grid evidence") {
  const auto g = grid(-8, 8, 200);
  for (const auto& f : sample_strategies()) {
    const auto c = alice::classify(f, g);
    const auto& flags = f.flags();
    if (flags.nondecreasing != Tri::unknown) CHECK(c.minimax == flags.nondecreasing);
    if (flags.proper != Tri::unknown) CHECK(c.proper == flags.proper);
    if (c.minimax == Tri::yes) {
      for (std::size_t i = 1; i < g.size(); ++i) CHECK(f(g[i - 1]) <= f(g[i]));
    }
  }
}
