#include "guess/alice.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace guess::alice {

namespace {

constexpr CoverageFlags kConstantFlags{Tri::yes, Tri::no, Tri::no};

CoveragePtr share(const CoverageFunction& f) { return std::make_shared<const CoverageFunction>(f); }

bool is_nondecreasing_nonconstant(const CoverageFlags& f) {
  return f.nondecreasing == Tri::yes &&
         (f.strictly_increasing == Tri::yes || f.proper == Tri::yes);
}

CoverageFlags dual_flags(const CoverageFlags& f) {
  CoverageFlags out;
  if (is_nondecreasing_nonconstant(f)) {
    out.nondecreasing = Tri::no;
    out.strictly_increasing = Tri::no;
  }
  // A proper F has limits 0 and 1; the dual runs from 1 to 0.
  if (f.proper == Tri::yes) out.proper = Tri::no;
  return out;
}

}  // namespace

CoverageFunction blind(Probability p) { return {kind::Constant{p}, kConstantFlags}; }

CoverageFunction threshold(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("threshold must be finite");
  return {kind::StepThreshold{t}, {Tri::yes, Tri::no, Tri::yes}};
}

CoverageFunction random_threshold(const ThresholdDistribution& d) {
  if (const auto* pm = std::get_if<family::PointMass>(&d.family()); pm && d.proper()) {
    return threshold(pm->t);
  }
  const CoverageFlags flags{Tri::yes, d.fully_supported() ? Tri::yes : Tri::no,
                            d.proper() ? Tri::yes : Tri::no};
  return {kind::DistributionCdf{d}, flags};
}

CoverageFunction dual(const CoverageFunction& f) {
  if (const auto* c = f.as<kind::Constant>()) return blind(Probability{1.0 - c->p});
  if (const auto* d = f.as<kind::DualOf>()) return *d->inner;
  return {kind::DualOf{share(f)}, dual_flags(f.flags())};
}

CoverageFunction gamma_mixture(const CoverageFunction& f, Probability gamma) {
  if (gamma == 1.0) return f;
  if (gamma == 0.0) return dual(f);
  if (gamma == 0.5) return blind(Probability{0.5});
  // F_gamma = (1 - gamma) + (2 gamma - 1) F stays inside
  // [min(gamma, 1 - gamma), max(gamma, 1 - gamma)], so it is never proper.
  CoverageFlags flags;
  flags.proper = Tri::no;
  if (gamma > 0.5) {
    flags.nondecreasing = f.flags().nondecreasing;
    flags.strictly_increasing = f.flags().strictly_increasing;
  } else if (is_nondecreasing_nonconstant(f.flags())) {
    flags.nondecreasing = Tri::no;
    flags.strictly_increasing = Tri::no;
  }
  return {kind::Mixture{gamma, share(f), share(dual(f))}, flags};
}

CoverageFunction mixture(const CoverageFunction& first, const CoverageFunction& second,
                         Probability gamma) {
  if (gamma == 1.0) return first;
  if (gamma == 0.0) return second;
  const auto& a = first.flags();
  const auto& b = second.flags();
  CoverageFlags flags;
  flags.nondecreasing = tri_and(a.nondecreasing, b.nondecreasing) == Tri::yes ? Tri::yes : Tri::unknown;
  if (flags.nondecreasing == Tri::yes &&
      (a.strictly_increasing == Tri::yes || b.strictly_increasing == Tri::yes)) {
    flags.strictly_increasing = Tri::yes;
  }
  flags.proper = tri_and(a.proper, b.proper) == Tri::yes ? Tri::yes : Tri::unknown;
  return {kind::Mixture{gamma, share(first), share(second)}, flags};
}

CoverageFunction piecewise_linear(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw std::invalid_argument("piecewise linear needs at least one knot");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto [x, y] = knots[i];
    if (!std::isfinite(x) || !(y >= 0.0 && y <= 1.0)) {
      throw std::invalid_argument("knot outside the domain or value outside [0, 1]");
    }
    if (i > 0 && !(knots[i - 1].first < x)) {
      throw std::invalid_argument("knot abscissae must increase strictly");
    }
  }
  return {kind::PiecewiseLinear{std::move(knots)}, {}};
}

CoverageFunction poisson_coverage(const PoissonIntensity& intensity) {
  if (intensity.shape == PoissonIntensity::Shape::homogeneous) {
    if (!(intensity.rate > 0.0)) throw std::invalid_argument("Poisson rate must be positive");
    return blind(Probability{-std::expm1(-intensity.rate)});
  }
  return {kind::PoissonCoverage{intensity}, {Tri::yes, Tri::yes, Tri::yes}};
}

CoverageFunction lattice(const LatticeRandomSet& set) { return {kind::LatticeTable{set}, {}}; }

LatticeRandomSet q_deformed_lattice(double q, std::int64_t lo, std::int64_t hi) {
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
  if (lo > hi) throw std::invalid_argument("empty lattice window");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t j = lo; j <= hi; ++j) {
    values.push_back(1.0 / (1.0 + std::pow(q, static_cast<double>(j))));
  }
  return {lo, std::move(values)};
}

std::vector<Interval> sample_poisson_decision_set(const PoissonIntensity& intensity, double lo,
                                                  double hi, RngStream& rng) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) {
    throw std::invalid_argument("Poisson window must be finite with lo <= hi");
  }
  const double left = lo - 1.0;
  const double mean = intensity.mean_count(left, hi);
  std::poisson_distribution<std::uint64_t> count_dist(mean);
  const std::uint64_t count = mean > 0.0 ? count_dist(rng) : 0;

  std::vector<double> atoms;
  atoms.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double u = rng.uniform();
    if (intensity.shape == PoissonIntensity::Shape::homogeneous) {
      atoms.push_back(left + u * (hi - left));
    } else {
      // Density proportional to e^t on [left, hi].
      const double r = std::exp(left - hi);
      atoms.push_back(hi + std::log(r + u * (1.0 - r)));
    }
  }
  std::sort(atoms.begin(), atoms.end());

  std::vector<Interval> out;
  for (double p : atoms) {
    const double s = std::max(p, lo);
    const double e = std::min(p + 1.0, hi);
    if (s > e) continue;
    if (!out.empty() && s <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, e);
    } else {
      out.push_back({s, e});
    }
  }
  return out;
}

bool covers(std::span<const Interval> set, double x) {
  const auto it = std::upper_bound(set.begin(), set.end(), x,
                                   [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == set.begin()) return false;
  return x <= std::prev(it)->hi;
}

std::set<std::int64_t> lattice_bernoulli(const LatticeRandomSet& set, RngStream& rng) {
  std::set<std::int64_t> out;
  for (std::int64_t j = set.lo(); j <= set.hi(); ++j) {
    if (rng.bernoulli(set(j))) out.insert(out.end(), j);
  }
  return out;
}

Classification classify(const CoverageFunction& f, std::span<const double> grid) {
  if (grid.size() < 2) throw std::invalid_argument("classification grid needs two points");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("classification grid must be sorted");
  }
  CoverageFlags flags = f.flags();

  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), [&f](double x) { return f(x); });

  if (flags.nondecreasing == Tri::unknown) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (grid[i - 1] < grid[i] && values[i - 1] > values[i]) {
        flags.nondecreasing = Tri::no;
        break;
      }
    }
  }
  if (flags.strictly_increasing == Tri::unknown) {
    if (flags.nondecreasing == Tri::no) {
      flags.strictly_increasing = Tri::no;
    } else {
      for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i - 1] < grid[i] && values[i - 1] >= values[i]) {
          flags.strictly_increasing = Tri::no;
          break;
        }
      }
    }
  }
  if (flags.proper == Tri::unknown) {
    if (values.front() > kProperTolerance || values.back() < 1.0 - kProperTolerance) {
      flags.proper = Tri::no;
    }
  }

  Classification c;
  c.minimax = flags.nondecreasing;
  c.strongly_dominant = flags.strictly_increasing;
  c.proper = flags.proper;
  c.superminimax = tri_and(flags.strictly_increasing, flags.proper);
  c.unknown_classification = c.minimax == Tri::unknown || c.strongly_dominant == Tri::unknown ||
                             c.proper == Tri::unknown || c.superminimax == Tri::unknown;
  return c;
}

}  // namespace guess::alice
