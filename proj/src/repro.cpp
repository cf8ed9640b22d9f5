#include "guess/repro.hpp"

#include "guess/alice.hpp"
#include "guess/analysis.hpp"
#include "guess/bob.hpp"
#include "guess/format.hpp"
#include "guess/game.hpp"
#include "guess/quadrature.hpp"
#include "guess/sim.hpp"
#include "guess/twopile.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace guess::repro {

namespace {

using fmt::number;

std::uint64_t sub_seed(const Options& o, int id, std::uint64_t j = 0) {
  return splitmix64(o.seed ^ splitmix64(static_cast<std::uint64_t>(id) * 1000003u + j));
}

CriterionResult result(bool passed, std::string detail) {
  CriterionResult r;
  r.passed = passed;
  r.detail = std::move(detail);
  return r;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1 -----------------------------------------------------------------------
CriterionResult finite_game(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream bad;
  for (std::int64_t m = 1; m <= 20; ++m) {
    const auto cert = analysis::finite_game_oracle(m, analysis::FiniteGameMode::exhaustive, o.workers);
    const Rational expected = Rational{1, 2} + Rational{1, 2 * m};
    if (!cert.exhaustive || cert.value != expected || cert.alice_guarantee != expected ||
        cert.bob_cap != expected) {
      bad << " m=" << m << ":" << to_string(cert.value);
    }
  }
  const double secs = elapsed_since(t0);
  const bool ok = bad.str().empty() && secs < 60.0;
  return result(ok, "m=1..20 exact 1/2+1/(2m) in " + number(secs) + " s" +
                        (bad.str().empty() ? "" : "; mismatches:" + bad.str()));
}

// 2 -----------------------------------------------------------------------
CriterionResult two_cards_iid(const Options& o) {
  const auto bob = bob::iid_uniform_pair();
  const auto br = analysis::best_response_value(bob);
  const auto mc = sim::estimate(bob, alice::threshold(0.5), 1'000'000, sub_seed(o, 2), o.workers);
  const double tol = 3.0 * std::sqrt(0.1875 / 1e6);
  const bool ok = std::abs(br.value - 0.75) < 1e-10 && std::abs(mc.point - 0.75) <= tol;
  return result(ok, "best response " + number(br.value) + " (" + br.method + "), Monte Carlo " +
                        number(mc.point) + ", tolerance " + number(tol));
}

// 3 -----------------------------------------------------------------------
CriterionResult training_sample(const Options& o) {
  const Rational exact = analysis::training_sample_value();
  const auto uni = sim::training_sample_sim(1'000'000, sub_seed(o, 3, 0), sim::TrainingSource::uniform, o.workers);
  const auto ex = sim::training_sample_sim(1'000'000, sub_seed(o, 3, 1), sim::TrainingSource::exponential, o.workers);
  const double two_thirds = 2.0 / 3.0;
  const bool ok = exact == Rational(2, 3) && uni.within(two_thirds, 3.0) && ex.within(two_thirds, 3.0);
  return result(ok, "exact " + to_string(exact) + ", uniform " + number(uni.point) + ", exponential " +
                        number(ex.point));
}

// 4 -----------------------------------------------------------------------
CoverageFunction random_coverage(RngStream& rng) {
  const double loc = rng.uniform(-3.0, 3.0);
  const double scale = rng.uniform(0.3, 3.0);
  switch (rng.integer(0, 6)) {
    case 0: return alice::random_threshold(ThresholdDistribution{family::Logistic{loc, scale}});
    case 1: return alice::random_threshold(ThresholdDistribution{family::Normal{loc, scale}});
    case 2: return alice::random_threshold(ThresholdDistribution{family::ContinuousUniform{loc, loc + scale}});
    case 3:
      return alice::gamma_mixture(alice::random_threshold(ThresholdDistribution{family::Logistic{loc, scale}}),
                                  Probability{rng.uniform()});
    case 4: return alice::poisson_coverage(PoissonIntensity::exponential());
    case 5: return alice::threshold(loc);
    default: {
      std::vector<std::pair<double, double>> knots;
      double x = loc - 2.0;
      for (int i = 0; i < 4; ++i) {
        knots.emplace_back(x, rng.uniform());
        x += rng.uniform(0.2, 1.5);
      }
      return alice::piecewise_linear(std::move(knots));
    }
  }
}

CriterionResult pair_formula(const Options& o) {
  RngStream rng(o.seed, 4);
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto f = random_coverage(rng);
    const double a = rng.uniform(-4.0, 4.0);
    const double b = a + rng.uniform(0.05, 3.0);
    const double exact = analysis::win_prob_vs_pair(f, a, b);
    const auto mc = sim::estimate(bob::pure_pair(a, b), f, 100'000, sub_seed(o, 4, i), o.workers);
    const double sigma = mc.sigma_at(exact);
    const double z = sigma > 0.0 ? std::abs(mc.point - exact) / sigma : (mc.point == exact ? 0.0 : INFINITY);
    worst = std::max(worst, z);
    if (!mc.within(exact, 4.0)) ++failures;
  }
  return result(failures == 0,
                "200 instances, largest deviation " + number(worst) + " sigma, " + std::to_string(failures) +
                    " beyond 4 sigma");
}

// 5 -----------------------------------------------------------------------
DiscreteBobStrategy random_discrete_bob(RngStream& rng) {
  const auto pairs = rng.integer(1, 5);
  std::vector<std::int64_t> raw;
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < pairs; ++i) {
    raw.push_back(rng.integer(1, 9));
    total += raw.back();
  }
  std::vector<PairEntry> entries;
  for (std::int64_t i = 0; i < pairs; ++i) {
    const auto a = rng.integer(-8, 8);
    const auto b = a + rng.integer(1, 6);
    entries.push_back({static_cast<double>(a), static_cast<double>(b), make_rational(raw[static_cast<std::size_t>(i)], total)});
  }
  return {std::move(entries), "random"};
}

ThresholdDistribution random_discrete_threshold(RngStream& rng) {
  const auto lo = rng.integer(-8, 8);
  const auto hi = lo + rng.integer(0, 8);
  const double p_minus = static_cast<double>(rng.integer(0, 2)) / 8.0;
  const double p_plus = static_cast<double>(rng.integer(0, 2)) / 8.0;
  if (rng.bernoulli(0.2)) return ThresholdDistribution{family::PointMass{static_cast<double>(lo)}};
  return ThresholdDistribution{family::DiscreteUniform{lo, hi}, Probability{p_minus}, Probability{p_plus}};
}

CriterionResult inequality(const Options& o) {
  RngStream rng(o.seed, 5);
  int checked = 0;
  int strict = 0;
  int failures = 0;
  while (checked < 1000) {
    const auto bob = random_discrete_bob(rng);
    const auto t = random_discrete_threshold(rng);
    analysis::InequalityCertificate c;
    try {
      c = analysis::conditional_inequality(bob, t);
    } catch (const ConditioningOnNull&) {
      continue;
    }
    ++checked;
    const bool expect_strict = c.p_y_lt_t_le_x > 0;
    if (c.strict) ++strict;
    if (!c.identity_holds || !c.bound_holds || c.strict != expect_strict) ++failures;
  }
  return result(failures == 0, std::to_string(checked) + " instances, " + std::to_string(strict) + " strict, " +
                                   std::to_string(failures) + " failures");
}

// 6 -----------------------------------------------------------------------
struct CorpusEntry {
  std::string name;
  CoverageFunction f;
  Tri superminimax;
};

std::vector<CorpusEntry> alice_corpus() {
  const ThresholdDistribution logistic{family::Logistic{0.0, 1.0}};
  const auto f_logistic = alice::random_threshold(logistic);
  return {
      {"blind 1/2", alice::blind(Probability{0.5}), Tri::no},
      {"blind 0.9", alice::blind(Probability{0.9}), Tri::no},
      {"threshold 0", alice::threshold(0.0), Tri::no},
      {"logistic threshold", f_logistic, Tri::yes},
      {"normal threshold", alice::random_threshold(ThresholdDistribution{family::Normal{1.0, 2.0}}), Tri::yes},
      {"uniform threshold", alice::random_threshold(ThresholdDistribution{family::ContinuousUniform{-1.0, 1.0}}),
       Tri::no},
      {"discrete uniform threshold",
       alice::random_threshold(ThresholdDistribution{family::DiscreteUniform{2, 5}}), Tri::no},
      {"logistic with atoms",
       alice::random_threshold(ThresholdDistribution{family::Logistic{0.0, 1.0}, Probability{0.1}, Probability{0.1}}),
       Tri::no},
      {"dual logistic", alice::dual(f_logistic), Tri::no},
      {"gamma mixture 3/4", alice::gamma_mixture(f_logistic, Probability{0.75}), Tri::no},
      {"gamma mixture 1/4", alice::gamma_mixture(f_logistic, Probability{0.25}), Tri::no},
      {"poisson homogeneous", alice::poisson_coverage(PoissonIntensity::homogeneous(1.0)), Tri::no},
      {"poisson exponential", alice::poisson_coverage(PoissonIntensity::exponential()), Tri::yes},
      {"q-lattice", alice::lattice(alice::q_deformed_lattice(0.5, -10, 10)), Tri::no},
      {"piecewise linear", alice::piecewise_linear({{-1.0, 0.2}, {1.0, 0.8}}), Tri::no},
  };
}

CriterionResult dominance(const Options&) {
  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back(-6.0 + 12.0 * i / 99.0);
  const auto f = alice::random_threshold(ThresholdDistribution{family::Logistic{0.0, 1.0}});
  const auto mix = alice::gamma_mixture(f, Probability{0.75});
  const auto dom = analysis::dominance_check(f, mix, grid);
  bool ok = dom == analysis::Dominance::dominates;
  std::ostringstream detail;
  detail << "threshold vs gamma mixture: " << analysis::to_string(dom);

  const std::vector<DiscreteBobStrategy> bobs{bob::consecutive_uniform(5), bob::scaled_consecutive(4, 3),
                                              bob::pure_pair(-5.0, -4.5), bob::pure_pair(2.5, 3.5)};
  int disagreements = 0;
  for (const auto& e : alice_corpus()) {
    const auto c = alice::classify(e.f, grid);
    bool agree = c.superminimax == e.superminimax;
    if (e.superminimax == Tri::yes) {
      for (const auto& b : bobs) agree = agree && analysis::win_prob_vs_discrete(e.f, b) > 0.5;
    }
    if (!agree) {
      ++disagreements;
      detail << "; " << e.name << " classified " << to_string(c.superminimax);
    }
  }
  ok = ok && disagreements == 0;
  detail << "; corpus disagreements " << disagreements;
  return result(ok, detail.str());
}

// 7 -----------------------------------------------------------------------
CriterionResult two_pile_iid(const Options& o) {
  double best_r = 0.0;
  double best_v = 2.0;
  for (int i = 5; i <= 95; ++i) {
    const double r = i / 100.0;
    const double v = twopile::iid_value_at_ratio(r);
    if (v < best_v) {
      best_v = v;
      best_r = r;
    }
  }
  bool ok = std::abs(best_v - 0.741) <= 0.005 && std::abs(best_r - 0.587) <= 0.005;
  std::ostringstream detail;
  detail << "sweep minimum " << number(best_v) << " at " << number(best_r);

  const std::pair<int, int> spots[] = {{2, 1}, {3, 1}};
  const double expected[] = {0.75, 0.8047};
  for (int s = 0; s < 2; ++s) {
    const twopile::PileConfig cfg(spots[s].first, spots[s].second);
    const double exact = twopile::iid_value(cfg);
    const auto mc = sim::run_trials(
        1'000'000, sub_seed(o, 7, static_cast<std::uint64_t>(s)),
        [&cfg](RngStream& rng) {
          const auto d = twopile::deal_iid(cfg, rng);
          return twopile::iid_decision(d, cfg) == d.alice_holds_max();
        },
        o.workers);
    ok = ok && std::abs(exact - expected[s]) <= 1e-4 && mc.within(exact, 3.0);
    detail << "; (" << cfg.n() << "," << cfg.k() << ") exact " << number(exact) << " Monte Carlo "
           << number(mc.point);
  }
  return result(ok, detail.str());
}

// 8 -----------------------------------------------------------------------
CriterionResult scale_mixture(const Options& o) {
  const double eps = 0.01;
  const double delta = twopile::select_delta(eps);
  const twopile::ScaleMixtureModel model(delta);
  const auto grid = twopile::default_epsilon_grid();
  const auto report = twopile::epsilon_bound_check(10, eps, delta, grid);
  std::ostringstream detail;
  detail << "delta " << number(delta) << ", worst |pi - k/n| " << number(report.worst_deviation);

  const twopile::PileConfig asym(4, 3);
  const std::uint64_t trials = 1'000'000;
  const std::uint64_t shards = (trials + sim::kShardSize - 1) / sim::kShardSize;
  std::int64_t diff_sum = 0;
  std::uint64_t diff_sq = 0;
  for (std::uint64_t s = 0; s < shards; ++s) {
    RngStream rng(sub_seed(o, 8), s);
    const std::uint64_t end = std::min(trials, (s + 1) * sim::kShardSize);
    for (std::uint64_t i = s * sim::kShardSize; i < end; ++i) {
      const auto d = twopile::deal(asym, model, rng);
      const bool truth = d.alice_holds_max();
      const int br = twopile::best_response_decision(d, asym, model) == truth;
      const int blind = twopile::blind_decision(asym, rng) == truth;
      diff_sum += br - blind;
      diff_sq += static_cast<std::uint64_t>((br - blind) * (br - blind));
    }
  }
  const double n = static_cast<double>(trials);
  const double adv = static_cast<double>(diff_sum) / n;
  const double var = static_cast<double>(diff_sq) / n - adv * adv;
  const double sigma = std::sqrt(std::max(var, 0.0) / n);
  const bool adv_ok = adv >= -3.0 * sigma && adv <= eps + 3.0 * sigma;
  detail << "; (4,3) advantage " << number(adv) << " sigma " << number(sigma);

  const auto sym_value = twopile::best_response_value_quadrature(twopile::PileConfig(4, 2), model);
  const bool sym_ok = sym_value <= 0.5 + eps + 1e-6;
  detail << "; (4,2) best response " << number(sym_value);
  return result(report.passed && adv_ok && sym_ok, detail.str());
}

// 9 -----------------------------------------------------------------------
double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

double normalization(int n, const twopile::ScaleMixtureModel& model) {
  // n int g_n(t) t^(n-1) dt with t = e^s
  auto right = [&](double s) { return n * twopile::g_scaled(s, n, model); };
  auto left = [&](double s) { return n * twopile::g_scaled(-s, n, model); };
  return quad::integrate_to_infinity(right, 0.0, 1e-13).value +
         quad::integrate_to_infinity(left, 0.0, 1e-13).value;
}

CriterionResult density_consistency(const Options&) {
  const double xs[] = {0.1, 0.5, 1.0, 2.0, 10.0};
  double worst_g = 0.0;
  double worst_norm = 0.0;
  double worst_marg = 0.0;
  for (double delta : {twopile::select_delta(0.01), 0.3}) {
    const twopile::ScaleMixtureModel model(delta);
    for (int n = 1; n <= 5; ++n) {
      for (double x : xs) {
        auto integrand = [&](double a) { return std::pow(a, -n) * twopile::h_density(a, model); };
        double q;
        if (x < 1.0) {
          q = quad::integrate(integrand, x, 1.0, 1e-13).value +
              quad::integrate_to_infinity(integrand, 1.0, 1e-13).value;
        } else {
          q = quad::integrate_to_infinity(integrand, x, 1e-13).value;
        }
        worst_g = std::max(worst_g, rel_err(twopile::g_eval(x, n, model), q));
      }
      worst_norm = std::max(worst_norm, std::abs(normalization(n, model) - 1.0));
    }
    const std::pair<int, int> configs[] = {{3, 1}, {4, 2}, {5, 3}};
    for (const auto& [n, k] : configs) {
      for (double x : xs) {
        auto tail = [&, n = n, k = k](double y) { return std::pow(y, n - k - 1) * twopile::g_eval(y, n, model); };
        double q;
        if (x < 1.0) {
          q = quad::integrate(tail, x, 1.0, 1e-12, {}).value + quad::integrate_to_infinity(tail, 1.0, 1e-12).value;
        } else {
          q = quad::integrate_to_infinity(tail, x, 1e-12).value;
        }
        const double gk = std::pow(x, n - k) * twopile::g_eval(x, n, model) + (n - k) * q;
        worst_marg = std::max(worst_marg, rel_err(gk, twopile::g_eval(x, k, model)));
      }
    }
  }
  const bool ok = worst_g < 1e-8 && worst_norm < 1e-8 && worst_marg < 1e-6;
  return result(ok, "g_n relative error " + number(worst_g) + ", normalization " + number(worst_norm) +
                        ", marginalization " + number(worst_marg));
}

// 10 ----------------------------------------------------------------------
CriterionResult repeated_game(const Options& o) {
  const std::uint64_t rounds = 10'000;
  const double bound = 0.5 + sim::harmonic(rounds) / (2.0 * rounds) + 3.0 * std::sqrt(0.25 / rounds);
  const std::vector<std::pair<std::string, CoverageFunction>> players{
      {"threshold 1.5", alice::threshold(1.5)},
      {"threshold 2", alice::threshold(2.0)},
      {"threshold 50", alice::threshold(50.0)},
      {"threshold 5000", alice::threshold(5000.0)},
      {"threshold -3", alice::threshold(-3.0)},
  };
  bool ok = true;
  std::ostringstream detail;
  detail << "bound " << number(bound);
  int idx = 0;
  for (const auto& [name, f] : players) {
    const auto trace = sim::repeated_game(sim::default_schedule(), "consecutive", f, rounds, sub_seed(o, 10, idx++));
    const double freq = trace.running_frequency.back();
    ok = ok && freq < bound;
    detail << "; " << name << " " << number(freq);
  }
  return result(ok, detail.str());
}

// 11 ----------------------------------------------------------------------
CriterionResult rank_property(const Options& o) {
  const ThresholdDistribution t{family::ContinuousUniform{0.0, 1.0}};
  bool ok = true;
  std::ostringstream detail;
  for (int n = 3; n <= 6; ++n) {
    const auto table = sim::rank_experiment(n, t, 1'000'000, sub_seed(o, 11, static_cast<std::uint64_t>(n)));
    const double cn = static_cast<double>(table.conditioned_trials);
    const double un = static_cast<double>(table.trials);
    for (const auto& row : table.rows) {
      const double exact_cond = analysis::rank_tail_given_exceedance(n, row.k);
      const double sc = std::sqrt(exact_cond * (1.0 - exact_cond) / cn);
      const double su = std::sqrt(row.exact_unconditional * (1.0 - row.exact_unconditional) / un);
      ok = ok && exact_cond > row.exact_unconditional && std::abs(row.conditional - exact_cond) <= 4.0 * sc &&
           std::abs(row.unconditional - row.exact_unconditional) <= 4.0 * su &&
           row.conditional > row.exact_unconditional - 4.0 * sc;
    }
  }
  const double q = analysis::rank_tail_given_exceedance(3, 2);
  ok = ok && std::abs(q - 0.5) <= 1e-6;
  detail << "n=3..6 conditional tails above (n-k)/n; n=3 P(R>2 | X_1>=T) = " << number(q) << " vs 1/3";
  return result(ok, detail.str());
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "finite game value 1/2 + 1/(2m), m = 1..20", finite_game},
      {2, "two cards iid best response 3/4", two_cards_iid},
      {3, "training sample 2/3", training_sample},
      {4, "pair win formula vs Monte Carlo", pair_formula},
      {5, "conditional inequality on discrete instances", inequality},
      {6, "dominance and superminimax classification", dominance},
      {7, "two-pile iid worst ratio", two_pile_iid},
      {8, "scale-mixture two-pile", scale_mixture},
      {9, "density self-consistency", density_consistency},
      {10, "repeated game bound", repeated_game},
      {11, "rank property", rank_property},
  };
  return all;
}

CriterionResult run_one(const Criterion& c, const Options& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = c.run(opts);
  } catch (const std::exception& e) {
    r = result(false, std::string("exception: ") + e.what());
  }
  r.id = c.id;
  r.title = c.title;
  r.seconds = elapsed_since(t0);
  return r;
}

std::vector<CriterionResult> run_all(const Options& opts) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) out.push_back(run_one(c, opts));
  return out;
}

std::string summary_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + secs +
         " s): " + r.detail;
}

}  // namespace guess::repro
