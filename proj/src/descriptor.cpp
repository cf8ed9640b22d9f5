#include "guess/descriptor.hpp"

#include "guess/alice.hpp"
#include "guess/format.hpp"
#include "overloaded.hpp"

#include <cmath>

namespace guess {

using nlohmann::json;
using detail::overloaded;

namespace {

json flags_json(const CoverageFlags& f) {
  return {{"nondecreasing", to_string(f.nondecreasing)},
          {"strictly_increasing", to_string(f.strictly_increasing)},
          {"proper", to_string(f.proper)}};
}

json envelope(const char* role, std::string kind, json params) {
  return {{"v", kDescriptorVersion}, {"role", role}, {"kind", std::move(kind)}, {"params", std::move(params)}};
}

void check_envelope(const json& j, const char* role) {
  if (!j.is_object()) throw DescriptorError("descriptor must be a JSON object");
  if (j.contains("v") && j.at("v") != kDescriptorVersion) {
    throw DescriptorError("unsupported descriptor version " + j.at("v").dump());
  }
  if (j.contains("role") && j.at("role") != role) {
    throw DescriptorError(std::string("expected role \"") + role + "\", got " + j.at("role").dump());
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) throw DescriptorError("descriptor without a kind");
}

const json& params_of(const json& j) {
  static const json empty = json::object();
  if (!j.contains("params")) return empty;
  if (!j.at("params").is_object()) throw DescriptorError("params must be an object");
  return j.at("params");
}

double num(const json& p, const char* key) {
  if (!p.contains(key)) throw DescriptorError(std::string("missing parameter ") + key);
  const auto& v = p.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  throw DescriptorError(std::string("parameter ") + key + " must be a number");
}

double num_or(const json& p, const char* key, double fallback) {
  return p.contains(key) ? num(p, key) : fallback;
}

std::int64_t integer(const json& p, const char* key) {
  if (!p.contains(key) || !p.at(key).is_number_integer()) {
    throw DescriptorError(std::string("parameter ") + key + " must be an integer");
  }
  return p.at(key).get<std::int64_t>();
}

Probability prob(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DescriptorError(std::string(what) + " must lie in [0, 1]");
  return Probability{x};
}

const char* arrangement_name(Arrangement a) {
  switch (a) {
    case Arrangement::show_lower: return "show_lower";
    case Arrangement::show_upper: return "show_upper";
    default: return "random";
  }
}

Arrangement arrangement_from(const std::string& s) {
  if (s == "random") return Arrangement::random;
  if (s == "show_lower") return Arrangement::show_lower;
  if (s == "show_upper") return Arrangement::show_upper;
  throw DescriptorError("unknown arrangement " + s);
}

}  // namespace

json to_json(const ThresholdDistribution& d) {
  json p = std::visit(
      overloaded{
          [](const family::PointMass& f) -> json { return {{"family", "point_mass"}, {"t", f.t}}; },
          [](const family::DiscreteUniform& f) -> json {
            return {{"family", "discrete_uniform"}, {"lo", f.lo}, {"hi", f.hi}};
          },
          [](const family::ContinuousUniform& f) -> json {
            return {{"family", "uniform"}, {"lo", f.lo}, {"hi", f.hi}};
          },
          [](const family::Logistic& f) -> json {
            return {{"family", "logistic"}, {"location", f.location}, {"scale", f.scale}};
          },
          [](const family::Normal& f) -> json { return {{"family", "normal"}, {"mean", f.mean}, {"sd", f.sd}}; },
      },
      d.family());
  p["p_minus"] = d.p_minus().value();
  p["p_plus"] = d.p_plus().value();
  return p;
}

ThresholdDistribution threshold_from_json(const json& p) {
  if (!p.is_object() || !p.contains("family") || !p.at("family").is_string()) {
    throw DescriptorError("threshold distribution needs a family");
  }
  const auto fam = p.at("family").get<std::string>();
  const Probability pm = prob(num_or(p, "p_minus", 0.0), "p_minus");
  const Probability pp = prob(num_or(p, "p_plus", 0.0), "p_plus");
  ThresholdFamily f;
  if (fam == "point_mass") {
    f = family::PointMass{num(p, "t")};
  } else if (fam == "discrete_uniform") {
    f = family::DiscreteUniform{integer(p, "lo"), integer(p, "hi")};
  } else if (fam == "uniform") {
    f = family::ContinuousUniform{num(p, "lo"), num(p, "hi")};
  } else if (fam == "logistic") {
    f = family::Logistic{num_or(p, "location", 0.0), num_or(p, "scale", 1.0)};
  } else if (fam == "normal") {
    f = family::Normal{num_or(p, "mean", 0.0), num_or(p, "sd", 1.0)};
  } else {
    throw DescriptorError("unknown threshold family " + fam);
  }
  try {
    return ThresholdDistribution{f, pm, pp};
  } catch (const std::invalid_argument& e) {
    throw DescriptorError(e.what());
  }
}

json to_json(const CoverageFunction& f) {
  json out = std::visit(
      overloaded{
          [](const kind::Constant& k) { return envelope("alice", "blind", {{"p", k.p}}); },
          [](const kind::StepThreshold& k) { return envelope("alice", "threshold", {{"t", k.t}}); },
          [](const kind::DistributionCdf& k) {
            return envelope("alice", "random_threshold", {{"distribution", to_json(k.dist)}});
          },
          [](const kind::PiecewiseLinear& k) {
            json knots = json::array();
            for (const auto& [x, y] : k.knots) knots.push_back({x, y});
            return envelope("alice", "piecewise_linear", {{"knots", knots}});
          },
          [](const kind::DualOf& k) { return envelope("alice", "dual", {{"of", to_json(*k.inner)}}); },
          [](const kind::Mixture& k) {
            const json first = to_json(*k.first);
            if (const auto* d = k.second->as<kind::DualOf>(); d && to_json(*d->inner) == first) {
              return envelope("alice", "gamma_mixture", {{"gamma", k.gamma}, {"of", first}});
            }
            return envelope("alice", "mixture",
                            {{"gamma", k.gamma}, {"first", first}, {"second", to_json(*k.second)}});
          },
          [](const kind::PoissonCoverage& k) {
            if (k.intensity.shape == PoissonIntensity::Shape::exponential) {
              return envelope("alice", "poisson", {{"intensity", "exponential"}});
            }
            return envelope("alice", "poisson", {{"intensity", "homogeneous"}, {"rate", k.intensity.rate}});
          },
          [](const kind::LatticeTable& k) {
            return envelope("alice", "lattice", {{"lo", k.set.lo()}, {"values", k.set.values()}});
          },
      },
      f.kind());
  out["flags"] = flags_json(f.flags());
  return out;
}

CoverageFunction alice_from_json(const json& j) {
  check_envelope(j, "alice");
  const auto kind = j.at("kind").get<std::string>();
  const json& p = params_of(j);
  try {
    if (kind == "blind") return alice::blind(prob(num(p, "p"), "p"));
    if (kind == "threshold") return alice::threshold(num(p, "t"));
    if (kind == "random_threshold") {
      if (!p.contains("distribution")) throw DescriptorError("missing parameter distribution");
      return alice::random_threshold(threshold_from_json(p.at("distribution")));
    }
    if (kind == "dual") return alice::dual(alice_from_json(p.at("of")));
    if (kind == "gamma_mixture") {
      return alice::gamma_mixture(alice_from_json(p.at("of")), prob(num(p, "gamma"), "gamma"));
    }
    if (kind == "mixture") {
      return alice::mixture(alice_from_json(p.at("first")), alice_from_json(p.at("second")),
                            prob(num(p, "gamma"), "gamma"));
    }
    if (kind == "piecewise_linear") {
      std::vector<std::pair<double, double>> knots;
      for (const auto& k : p.at("knots")) knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
      return alice::piecewise_linear(std::move(knots));
    }
    if (kind == "poisson") {
      const auto shape = p.value("intensity", std::string("homogeneous"));
      if (shape == "exponential") return alice::poisson_coverage(PoissonIntensity::exponential());
      if (shape == "homogeneous") return alice::poisson_coverage(PoissonIntensity::homogeneous(num(p, "rate")));
      throw DescriptorError("unknown Poisson intensity " + shape);
    }
    if (kind == "lattice") {
      return alice::lattice(LatticeRandomSet{integer(p, "lo"), p.at("values").get<std::vector<double>>()});
    }
    if (kind == "q_lattice") {
      return alice::lattice(alice::q_deformed_lattice(num(p, "q"), integer(p, "lo"), integer(p, "hi")));
    }
  } catch (const json::exception& e) {
    throw DescriptorError(std::string("malformed ") + kind + " descriptor: " + e.what());
  } catch (const DescriptorError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DescriptorError(e.what());
  }
  throw DescriptorError("unknown alice kind " + kind);
}

json to_json(const DiscreteBobStrategy& bob) {
  json pairs = json::array();
  for (const auto& e : bob.entries()) {
    pairs.push_back({{"a", e.a},
                     {"b", e.b},
                     {"weight", fmt::rational_json(e.weight)},
                     {"arrangement", arrangement_name(e.arrangement)}});
  }
  return envelope("bob", "discrete", {{"pairs", pairs}, {"description", bob.description()}});
}

json bob_descriptor(const std::string& kind, json params) {
  return envelope("bob", kind, std::move(params));
}

BobStrategy bob_from_json(const json& j) {
  check_envelope(j, "bob");
  const auto kind = j.at("kind").get<std::string>();
  const json& p = params_of(j);
  try {
    if (kind == "pure_pair") return bob::pure_pair(num(p, "a"), num(p, "b"));
    if (kind == "consecutive_uniform") return bob::consecutive_uniform(integer(p, "m"));
    if (kind == "scaled_consecutive") return bob::scaled_consecutive(integer(p, "m"), integer(p, "k"));
    if (kind == "modular_three") {
      std::map<std::int64_t, Rational> w;
      for (const auto& [key, v] : p.at("weights").items()) w[std::stoll(key)] = fmt::rational_from_json(v);
      return bob::modular_three(w);
    }
    if (kind == "zero_pm_one") return bob::zero_pm_one();
    if (kind == "discrete") {
      std::vector<PairEntry> entries;
      for (const auto& e : p.at("pairs")) {
        entries.push_back({e.at("a").get<double>(), e.at("b").get<double>(),
                           fmt::rational_from_json(e.at("weight")),
                           arrangement_from(e.value("arrangement", std::string("random")))});
      }
      return DiscreteBobStrategy{std::move(entries), p.value("description", std::string("custom"))};
    }
    if (kind == "location_uniform") return bob::location_uniform(num(p, "m"));
    if (kind == "scale_uniform") return bob::scale_uniform_twocards(num(p, "m"));
    if (kind == "iid_uniform") return bob::iid_uniform_pair();
    if (kind == "closest_to_half") return bob::arrangement_closest_to_half();
  } catch (const json::exception& e) {
    throw DescriptorError(std::string("malformed ") + kind + " descriptor: " + e.what());
  } catch (const DescriptorError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw DescriptorError(e.what());
  } catch (const std::logic_error& e) {
    throw DescriptorError(e.what());
  }
  throw DescriptorError("unknown bob kind " + kind);
}

}  // namespace guess
