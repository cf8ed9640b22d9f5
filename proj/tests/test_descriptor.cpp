#include <doctest.h>

#include "guess/alice.hpp"
#include "guess/analysis.hpp"
#include "guess/descriptor.hpp"

using namespace guess;
using nlohmann::json;

TEST_CASE("alice descriptors round trip") {
  const auto f = alice::random_threshold(ThresholdDistribution{family::Logistic{0.5, 2.0}, Probability{0.1}, Probability{0.0}});
  const std::vector<CoverageFunction> all{
      alice::blind(Probability{0.25}),
      alice::threshold(1.5),
      f,
      alice::random_threshold(ThresholdDistribution{family::DiscreteUniform{2, 9}}),
      alice::random_threshold(ThresholdDistribution{family::Normal{0.0, 3.0}}),
      alice::random_threshold(ThresholdDistribution{family::ContinuousUniform{-1.0, 4.0}}),
      alice::dual(f),
      alice::gamma_mixture(f, Probability{0.75}),
      alice::mixture(f, alice::threshold(0.0), Probability{0.4}),
      alice::piecewise_linear({{0.0, 0.1}, {1.0, 0.9}}),
      alice::poisson_coverage(PoissonIntensity::exponential()),
      alice::lattice(alice::q_deformed_lattice(0.5, -3, 3)),
  };
  for (const auto& g : all) {
    const json j = to_json(g);
    CHECK(j["v"] == 1);
    CHECK(j["role"] == "alice");
    CHECK(j.contains("flags"));
    const auto back = alice_from_json(json::parse(j.dump()));
    CHECK(to_json(back) == j);
    for (double x : {-3.0, -0.2, 0.0, 1.0, 2.7}) CHECK(back(x) == doctest::Approx(g(x)).epsilon(1e-15));
  }
  CHECK(to_json(alice::gamma_mixture(f, Probability{0.75}))["kind"] == "gamma_mixture");
}

TEST_CASE("alice descriptors from hand-written JSON") {
  const auto f = alice_from_json(json::parse(R"({"v":1,"role":"alice","kind":"random_threshold",
      "params":{"distribution":{"family":"logistic"}}})"));
  CHECK(f(0.0) == doctest::Approx(0.5));
  const auto q = alice_from_json(json::parse(R"({"kind":"q_lattice","params":{"q":0.5,"lo":-2,"hi":2}})"));
  CHECK(q(0.0) == doctest::Approx(0.5));
  const auto p = alice_from_json(json::parse(R"({"kind":"poisson","params":{"intensity":"homogeneous","rate":0.6931471805599453}})"));
  CHECK(p(5.0) == doctest::Approx(0.5));
}

TEST_CASE("malformed descriptors") {
  CHECK_THROWS_AS(alice_from_json(json::parse(R"({"v":2,"kind":"blind","params":{"p":0.5}})")), DescriptorError);
  CHECK_THROWS_AS(alice_from_json(json::parse(R"({"role":"bob","kind":"blind","params":{"p":0.5}})")), DescriptorError);
  CHECK_THROWS_AS(alice_from_json(json::parse(R"({"kind":"nonsense"})")), DescriptorError);
  CHECK_THROWS_AS(alice_from_json(json::parse(R"({"kind":"blind","params":{"p":1.5}})")), DescriptorError);
  CHECK_THROWS_AS(alice_from_json(json::parse(R"({"kind":"blind","params":{}})")), DescriptorError);
  CHECK_THROWS_AS(alice_from_json(json::parse(R"([1,2])")), DescriptorError);
  CHECK_THROWS_AS(bob_from_json(json::parse(R"({"kind":"pure_pair","params":{"a":2,"b":2}})")), DescriptorError);
  CHECK_THROWS_AS(bob_from_json(json::parse(R"({"kind":"consecutive_uniform","params":{"m":0}})")), DescriptorError);
  CHECK_THROWS_AS(threshold_from_json(json::parse(R"({"family":"cauchy"})")), DescriptorError);
}

TEST_CASE("bob descriptors") {
  const auto c = bob_from_json(bob_descriptor("consecutive_uniform", {{"m", 4}}));
  const auto& d = std::get<DiscreteBobStrategy>(c);
  CHECK(analysis::best_response(d).value == make_rational(5, 8));

  const json j = to_json(bob::zero_pm_one());
  const auto z = std::get<DiscreteBobStrategy>(bob_from_json(json::parse(j.dump())));
  CHECK_FALSE(z.exchangeable());
  CHECK(z.entries().size() == 2);
  CHECK(z.entries()[0].weight == make_rational(1, 2));

  const auto m = bob_from_json(json::parse(R"({"v":1,"role":"bob","kind":"modular_three",
      "params":{"weights":{"0":"1/3","4":{"num":"2","den":"3"}}}})"));
  CHECK(analysis::best_response(std::get<DiscreteBobStrategy>(m)).value == 1);

  for (const char* kind : {"iid_uniform", "closest_to_half"}) {
    CHECK(std::holds_alternative<ContinuousBobStrategy>(bob_from_json(bob_descriptor(kind, json::object()))));
  }
  CHECK(std::holds_alternative<ContinuousBobStrategy>(bob_from_json(bob_descriptor("scale_uniform", {{"m", 10.0}}))));
  CHECK(std::holds_alternative<ContinuousBobStrategy>(bob_from_json(bob_descriptor("location_uniform", {{"m", 2.0}}))));
}
