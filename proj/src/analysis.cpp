#include "guess/analysis.hpp"

#include "guess/quadrature.hpp"
#include "guess/rng.hpp"
#include "overloaded.hpp"

#include <boost/math/distributions/binomial.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace guess::analysis {

using detail::overloaded;

namespace {

struct Outcome {
  double shown;
  double hidden;
  Rational prob;
};

/// Joint law of (X, Y) as a list of atoms.
std::vector<Outcome> outcomes(const DiscreteBobStrategy& bob) {
  std::vector<Outcome> out;
  out.reserve(2 * bob.entries().size());
  const Rational half = make_rational(1, 2);
  for (const auto& e : bob.entries()) {
    if (e.weight == 0) continue;
    switch (e.arrangement) {
      case Arrangement::show_lower: out.push_back({e.a, e.b, e.weight}); break;
      case Arrangement::show_upper: out.push_back({e.b, e.a, e.weight}); break;
      default:
        out.push_back({e.a, e.b, e.weight * half});
        out.push_back({e.b, e.a, e.weight * half});
    }
  }
  return out;
}

}  // namespace

Rational payoff_pure(const std::function<bool(double)>& in_decision_set, double a, double b) {
  if (!(a < b)) throw InvalidPair("payoff needs a < b");
  const bool a_in = in_decision_set(a);
  const bool b_in = in_decision_set(b);
  if (a_in == b_in) return make_rational(1, 2);
  return Rational{b_in ? 1 : 0};
}

Probability win_prob_vs_pair(const CoverageFunction& f, double a, double b) {
  if (!(a < b)) throw InvalidPair("win probability needs a < b");
  return Probability{std::clamp(0.5 + 0.5 * (f(b) - f(a)), 0.0, 1.0)};
}

Probability win_prob_vs_discrete(const CoverageFunction& f, const DiscreteBobStrategy& bob) {
  double total = 0.0;
  for (const auto& e : bob.entries()) {
    const double w = to_double(e.weight);
    switch (e.arrangement) {
      case Arrangement::show_lower: total += w * (1.0 - f(e.a)); break;
      case Arrangement::show_upper: total += w * f(e.b); break;
      default: total += w * (0.5 + 0.5 * (f(e.b) - f(e.a)));
    }
  }
  return Probability{std::clamp(total, 0.0, 1.0)};
}

std::vector<double> BestResponseReport::decision_set() const {
  std::vector<double> out;
  for (const auto& [x, p] : table) {
    if (p.accept) out.push_back(x);
  }
  return out;
}

BestResponseReport best_response(const DiscreteBobStrategy& bob) {
  std::map<double, Rational> mass;
  std::map<double, Rational> below;
  for (const auto& o : outcomes(bob)) {
    mass[o.shown] += o.prob;
    if (o.hidden < o.shown) below[o.shown] += o.prob;
  }
  const Rational half = make_rational(1, 2);
  BestResponseReport report;
  report.value = half;
  for (const auto& [x, m] : mass) {
    if (m == 0) continue;
    const Rational pi = below[x] / m;
    report.table.emplace(x, SupportPoint{m, pi, pi >= half});
    report.value += m * abs(pi - half);
  }
  return report;
}

double conditional_median(const DiscreteBobStrategy& bob, double x) {
  std::map<double, Rational> conditional;
  Rational mass{0};
  for (const auto& o : outcomes(bob)) {
    if (o.shown != x) continue;
    conditional[o.hidden] += o.prob;
    mass += o.prob;
  }
  if (mass == 0) {
    std::ostringstream os;
    os << "P(X = " << x << ") = 0";
    throw UnsupportedPoint(os.str());
  }
  Rational running{0};
  for (const auto& [y, p] : conditional) {
    running += p;
    if (running * 2 >= mass) return y;
  }
  return conditional.rbegin()->first;
}

Probability threshold_win_exact(const ThresholdDistribution& d, const DiscreteBobStrategy& bob) {
  if (!bob.exchangeable()) {
    throw std::invalid_argument("threshold win formula needs an exchangeable strategy");
  }
  // P(Y < T <= X) = sum over pairs of w/2 P(a < T <= b).
  double crossing = 0.0;
  for (const auto& e : bob.entries()) {
    crossing += 0.5 * to_double(e.weight) * d.interval_prob(e.a, e.b);
  }
  return Probability{std::clamp(0.5 + crossing, 0.0, 1.0)};
}

InequalityCertificate conditional_inequality(const DiscreteBobStrategy& bob,
                                             const ThresholdDistribution& d) {
  InequalityCertificate c;
  Rational larger_and_exceeds{0};
  for (const auto& o : outcomes(bob)) {
    const Rational f_shown = d.cdf_exact(o.shown);  // P(T <= x)
    c.p_x_ge_t += o.prob * f_shown;
    if (o.shown > o.hidden) {
      larger_and_exceeds += o.prob * f_shown;
      c.p_y_lt_t_le_x += o.prob * (f_shown - d.cdf_exact(o.hidden));
    }
  }
  if (c.p_x_ge_t == 0) throw ConditioningOnNull("P(X >= T) = 0");
  const Rational half = make_rational(1, 2);
  c.lhs = larger_and_exceeds / c.p_x_ge_t;
  c.rhs = half + half * (c.p_y_lt_t_le_x / c.p_x_ge_t);
  c.identity_holds = c.lhs == c.rhs;
  c.bound_holds = c.lhs >= half;
  c.strict = c.lhs > half;
  return c;
}

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::dominates: return "dominates";
    case Dominance::dominated: return "dominated";
    case Dominance::equal: return "equal";
    default: return "incomparable";
  }
}

Dominance dominance_check(const CoverageFunction& f1, const CoverageFunction& f2,
                          std::span<const double> grid, double tol) {
  if (grid.size() < 2) throw std::invalid_argument("dominance grid needs two points");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("dominance grid must be sorted");
  }
  std::vector<double> v1(grid.size());
  std::vector<double> v2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    v1[i] = f1(grid[i]);
    v2[i] = f2(grid[i]);
  }
  bool some_greater = false;
  bool some_less = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      if (!(grid[i] < grid[j])) continue;
      const double diff = (v1[j] - v1[i]) - (v2[j] - v2[i]);
      if (diff > tol) some_greater = true;
      if (diff < -tol) some_less = true;
    }
  }
  if (some_greater && some_less) return Dominance::incomparable;
  if (some_greater) return Dominance::dominates;
  if (some_less) return Dominance::dominated;
  return Dominance::equal;
}

Rational finite_game_value(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("finite game needs m >= 1");
  return make_rational(1, 2) + make_rational(1, 2 * m);
}

FiniteGameCertificate finite_game_oracle(std::int64_t m, FiniteGameMode mode, unsigned workers) {
  if (m < 1) throw std::invalid_argument("finite game needs m >= 1");
  FiniteGameCertificate cert;
  cert.m = m;

  // Alice: threshold uniform on {2, ..., m + 1} against every pair.
  const ThresholdDistribution t{family::DiscreteUniform{2, m + 1}};
  const Rational half = make_rational(1, 2);
  bool first = true;
  for (std::int64_t a = 1; a <= m + 1; ++a) {
    for (std::int64_t b = a + 1; b <= m + 1; ++b) {
      const Rational w = half + half * (t.cdf_exact(static_cast<double>(b)) -
                                        t.cdf_exact(static_cast<double>(a)));
      if (first || w < cert.alice_guarantee) cert.alice_guarantee = w;
      first = false;
    }
  }
  if (first) cert.alice_guarantee = Rational{1};

  // Bob: uniform consecutive pairs against every pure decision set.
  if (m <= kMaxExhaustiveM) {
    const int sites = static_cast<int>(m + 1);
    const std::uint64_t total = std::uint64_t{1} << sites;
    const unsigned shards = std::max(1u, workers);
    std::vector<std::int64_t> best(shards, -1);
    auto scan = [&](unsigned shard) {
      std::int64_t local = -1;
      for (std::uint64_t mask = shard; mask < total; mask += shards) {
        // Twice the payoff, summed over beta: 1 when both or neither of
        // beta, beta + 1 is in D, 2 when only beta + 1 is, 0 on an inversion.
        std::int64_t twice = 0;
        for (int beta = 1; beta <= m; ++beta) {
          const bool lo_in = (mask >> (beta - 1)) & 1u;
          const bool hi_in = (mask >> beta) & 1u;
          twice += lo_in == hi_in ? 1 : (hi_in ? 2 : 0);
        }
        local = std::max(local, twice);
      }
      best[shard] = local;
    };
    if (shards == 1) {
      scan(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned s = 0; s < shards; ++s) pool.emplace_back(scan, s);
    }
    cert.bob_cap = make_rational(*std::max_element(best.begin(), best.end()), 2 * m);
    cert.exhaustive = true;
    cert.decision_sets_checked = total;
  } else if (mode == FiniteGameMode::exhaustive) {
    throw ExhaustionLimit("exhaustive enumeration is limited to m <= 20");
  } else {
    cert.bob_cap = best_response(bob::consecutive_uniform(m)).value;
  }

  const Rational expected = finite_game_value(m);
  if (cert.alice_guarantee != expected || cert.bob_cap != expected) {
    throw std::logic_error("finite game guarantees do not meet at 1/2 + 1/(2m): alice " +
                           guess::to_string(cert.alice_guarantee) + ", bob " + guess::to_string(cert.bob_cap));
  }
  cert.value = expected;
  return cert;
}

bool training_sample_correct(double threshold, double shown, double hidden) {
  if (threshold == shown || threshold == hidden || shown == hidden) {
    throw TieError("training sample needs three distinct numbers");
  }
  const bool accepted = shown >= threshold;
  return accepted == (shown > hidden);
}

Rational training_sample_value() {
  std::array<int, 3> ranks{0, 1, 2};
  int wins = 0;
  int orderings = 0;
  do {
    wins += training_sample_correct(ranks[0], ranks[1], ranks[2]) ? 1 : 0;
    ++orderings;
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return make_rational(wins, orderings);
}

std::vector<double> jump_points(const CoverageFunction& f, double lo, double hi,
                                std::size_t limit) {
  std::vector<double> out;
  auto add = [&](double x) {
    if (x > lo && x < hi && out.size() < limit) out.push_back(x);
  };
  auto add_integers = [&](double from, double to) {
    const double start = std::max(std::ceil(from), std::ceil(lo));
    const double stop = std::min(std::floor(to), std::floor(hi));
    for (double j = start; j <= stop && out.size() < limit; j += 1.0) add(j);
  };
  std::visit(overloaded{
                 [](const kind::Constant&) {},
                 [&](const kind::StepThreshold& k) { add(k.t); },
                 [&](const kind::DistributionCdf& k) {
                   if (const auto* pm = std::get_if<family::PointMass>(&k.dist.family())) {
                     add(pm->t);
                   } else if (const auto* du = std::get_if<family::DiscreteUniform>(&k.dist.family())) {
                     add_integers(static_cast<double>(du->lo), static_cast<double>(du->hi));
                   } else if (const auto* cu = std::get_if<family::ContinuousUniform>(&k.dist.family())) {
                     add(cu->lo);
                     add(cu->hi);
                   }
                 },
                 [&](const kind::PiecewiseLinear& k) {
                   for (const auto& [x, y] : k.knots) add(x);
                 },
                 [&](const kind::DualOf& k) {
                   for (double x : jump_points(*k.inner, lo, hi, limit)) add(x);
                 },
                 [&](const kind::Mixture& k) {
                   for (double x : jump_points(*k.first, lo, hi, limit)) add(x);
                   for (double x : jump_points(*k.second, lo, hi, limit)) add(x);
                 },
                 [](const kind::PoissonCoverage&) {},
                 [&](const kind::LatticeTable& k) {
                   add_integers(static_cast<double>(k.set.lo()), static_cast<double>(k.set.hi()));
                 },
             },
             f.kind());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

/// int f over the strategy support, in log x when the support asks for it.
quad::Result integrate_over_support(const std::function<double(double)>& g, const Support& s,
                                    std::vector<double> breaks, double rel_tol) {
  breaks.insert(breaks.end(), s.breaks.begin(), s.breaks.end());
  if (!s.log_scale) return quad::integrate(g, s.lo, s.hi, rel_tol, breaks);
  std::vector<double> log_breaks;
  for (double b : breaks) {
    if (b > 0.0) log_breaks.push_back(std::log(b));
  }
  const double log_lo = s.lo > 0.0 ? std::log(s.lo) : -std::numeric_limits<double>::infinity();
  const auto in_log = [&g](double t) {
    const double x = std::exp(t);
    return x > 0.0 ? g(x) * x : 0.0;
  };
  return quad::integrate(in_log, log_lo, std::log(s.hi), rel_tol, log_breaks);
}

}  // namespace

std::optional<double> win_prob_vs_continuous(const CoverageFunction& f,
                                             const ContinuousBobStrategy& bob) {
  if (!bob.analytic_pi || !bob.marginal_density || !bob.support) return std::nullopt;
  const auto& pi = *bob.analytic_pi;
  const auto& density = *bob.marginal_density;
  const auto g = [&](double x) {
    const double p = pi(x);
    return density(x) * (1.0 - p + f(x) * (2.0 * p - 1.0));
  };
  const auto r = integrate_over_support(g, *bob.support,
                                        jump_points(f, bob.support->lo, bob.support->hi), 1e-11);
  return std::clamp(quad::checked(r, 1e-7, "continuous win probability"), 0.0, 1.0);
}

ContinuousBestResponse best_response_value(const ContinuousBobStrategy& bob, std::uint64_t seed,
                                           std::uint64_t samples) {
  if (bob.analytic_pi && bob.marginal_density && bob.support) {
    const auto& pi = *bob.analytic_pi;
    const auto& density = *bob.marginal_density;
    const auto g = [&](double x) {
      const double p = pi(x);
      return density(x) * std::max(p, 1.0 - p);
    };
    const auto r = integrate_over_support(g, *bob.support, {}, 1e-11);
    return {quad::checked(r, 1e-7, "best response"), r.error, "quadrature", std::nullopt};
  }
  RngStream rng(seed, 0);
  if (bob.analytic_pi) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const double p = (*bob.analytic_pi)(bob.sample(rng).shown);
      const double v = std::max(p, 1.0 - p);
      sum += v;
      sum_sq += v * v;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {mean, std::sqrt(var / n), "monte-carlo", std::nullopt};
  }
  // No pi: estimate it on equal-count bins of the shown number.
  std::vector<std::pair<double, bool>> draws;
  draws.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const NumberPair p = bob.sample(rng);
    draws.emplace_back(p.shown, p.hidden < p.shown);
  }
  std::sort(draws.begin(), draws.end());
  const std::size_t bins = std::max<std::size_t>(1, std::min<std::size_t>(200, samples / 1000));
  double value = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = b * draws.size() / bins;
    const std::size_t hi = (b + 1) * draws.size() / bins;
    if (hi == lo) continue;
    std::size_t below = 0;
    for (std::size_t i = lo; i < hi; ++i) below += draws[i].second ? 1 : 0;
    const double p = static_cast<double>(below) / static_cast<double>(hi - lo);
    value += static_cast<double>(hi - lo) * std::max(p, 1.0 - p);
  }
  value /= static_cast<double>(draws.size());
  return {value, 0.5 / std::sqrt(static_cast<double>(samples) / static_cast<double>(bins)),
          "binned", std::string("no analytic pi; binned estimate is biased upward")};
}

double rank_tail_given_exceedance(int n, int k) {
  if (n < 2 || k < 0 || k >= n) throw std::invalid_argument("rank tail needs n >= 2, 0 <= k < n");
  // R - 1 ~ Binomial(n - 1, x) given X_1 = x; P(X_1 >= T | X_1 = x) = x.
  const auto g = [n, k](double x) {
    if (k == 0) return x;
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    boost::math::binomial_distribution<double> bin(n - 1, x);
    return x * boost::math::cdf(boost::math::complement(bin, k - 1));
  };
  const double joint = quad::checked(quad::integrate(g, 0.0, 1.0, 1e-13), 1e-9, "rank tail");
  return joint / 0.5;
}

}  // namespace guess::analysis
